#pragma once

// Small reverse-mode autodiff engine over dense double tensors. Dynamic graphs:
// every op allocates a node holding its value, its parents, and a backward
// closure. Desk-scale by design: plain vectors, single-threaded, no views.

#include <functional>
#include <memory>
#include <vector>

#include "pointerlab/common.hpp"

namespace pointerlab {

using Shape = std::vector<int>;

int64_t shape_size(const Shape& s);

struct TensorNode {
    Shape shape;
    std::vector<double> value;
    std::vector<double> grad;  // allocated lazily during backward
    bool requires_grad = false;
    std::vector<std::shared_ptr<TensorNode>> parents;
    std::function<void(TensorNode&)> backward_fn;  // reads this->grad, accumulates into parents

    int64_t size() const { return static_cast<int64_t>(value.size()); }
    void ensure_grad() {
        if (grad.size() != value.size()) grad.assign(value.size(), 0.0);
    }
};

using NodePtr = std::shared_ptr<TensorNode>;

class Tensor {
public:
    Tensor() = default;
    explicit Tensor(NodePtr node) : node_(std::move(node)) {}

    static Tensor zeros(const Shape& shape, bool requires_grad = false);
    static Tensor full(const Shape& shape, double v, bool requires_grad = false);
    static Tensor from_data(const Shape& shape, std::vector<double> data, bool requires_grad = false);
    static Tensor scalar(double v);

    bool defined() const { return node_ != nullptr; }
    const Shape& shape() const { return node_->shape; }
    int dim(int i) const { return node_->shape[static_cast<size_t>(i)]; }
    int64_t size() const { return node_->size(); }

    double* data() { return node_->value.data(); }
    const double* data() const { return node_->value.data(); }
    std::vector<double>& values() { return node_->value; }
    const std::vector<double>& values() const { return node_->value; }

    // gradient buffer; valid after backward() over a graph containing this leaf
    const std::vector<double>& grad() const { return node_->grad; }
    std::vector<double>& grad_mut() { return node_->grad; }

    double item() const;
    bool requires_grad() const { return node_->requires_grad; }

    // Backpropagate from this scalar. Zeroes all grads in the reachable
    // subgraph first, so successive calls yield independent gradients.
    void backward() const;

    NodePtr node() const { return node_; }

private:
    NodePtr node_;
};

// ----- elementwise -----
Tensor add(const Tensor& a, const Tensor& b);
Tensor sub(const Tensor& a, const Tensor& b);
Tensor mul(const Tensor& a, const Tensor& b);
Tensor ediv(const Tensor& a, const Tensor& b);
Tensor emin(const Tensor& a, const Tensor& b);
Tensor emax(const Tensor& a, const Tensor& b);
Tensor neg(const Tensor& a);
Tensor scale(const Tensor& a, double s);
Tensor add_scalar(const Tensor& a, double s);
Tensor relu(const Tensor& a);
Tensor eabs(const Tensor& a);
Tensor sigmoid(const Tensor& a);
Tensor eexp(const Tensor& a);
Tensor elog(const Tensor& a);  // clamps input at 1e-300 to keep values finite
// clamp with straight-through gradient (backward passes grad unchanged)
Tensor clamp_st(const Tensor& a, double lo, double hi);

// ----- reductions -----
Tensor sum_scaled(const Tensor& a, double s);
inline Tensor sum(const Tensor& a) { return sum_scaled(a, 1.0); }
Tensor mean_all(const Tensor& a);

// ----- linear algebra / shape -----
Tensor matmul(const Tensor& a, const Tensor& b);                       // (m,k) x (k,n)
Tensor linear(const Tensor& x, const Tensor& w, const Tensor& b);      // x:(n,in) w:(out,in) b:(out)
Tensor softmax_rows(const Tensor& x, int row_len);                     // softmax over groups of row_len
Tensor layer_norm_rows(const Tensor& x, const Tensor& gamma, const Tensor& beta,
                       int row_len, double eps = 1e-5);
Tensor reshape(const Tensor& x, const Shape& shape);
Tensor concat_cols(const std::vector<Tensor>& xs);                     // all (n,ci) -> (n, sum ci)
Tensor slice_cols(const Tensor& x, int start, int len);                // x:(n,c) -> (n,len)
Tensor gather_rows(const Tensor& x, const std::vector<int>& idx);      // x:(n,c) -> (k,c)

// ----- vision ops -----
// x:(Cin,H,W) w:(Cout,Cin,kh,kw) b:(Cout); zero padding `pad`, stride `stride`
Tensor conv2d(const Tensor& x, const Tensor& w, const Tensor& b, int stride, int pad);
// values:(H*W, C) row-major grid; locs:(N,2) normalized (y,x) with pixel centers
// at ((i+0.5)/H, (j+0.5)/W); bilinear with zero padding outside [0,1]^2 -> (N,C)
Tensor grid_sample_rows(const Tensor& values, int h, int w, const Tensor& locs);
// out = x + e where mask nonzero, x elsewhere (bit-exact outside the mask)
Tensor masked_add(const Tensor& x, const Tensor& e, const std::vector<uint8_t>& mask);

// ----- losses -----
// weighted NLL of softmax rows: sum_i w[t_i] * (-log p_i[t_i]) / normalizer
Tensor cross_entropy_rows(const Tensor& logits, const std::vector<int>& targets,
                          const std::vector<double>& class_weights, double normalizer);
// CenterNet-style penalty-reduced focal loss on a sigmoid heatmap
Tensor focal_heatmap_loss(const Tensor& logits, const std::vector<double>& target,
                          double alpha = 2.0, double beta = 4.0);

// ----- deformable attention kernels -----
// offsets:(Q, H*D*R*2) laid out ((h*D+d)*R+k)*2+c per row; refs:(Q,2).
// Extracts sampling locations ref_q + offset for head h, level d -> (Q*R, 2).
Tensor make_sampling_locs(const Tensor& offsets, const Tensor& refs, int h, int d,
                          int H, int D, int R);
// svs[d]:(Q*R, Ch) sampled values per level; post:(Q*H, D*R) post-softmax
// attention; returns (Q, Ch) = sum_{d,k} post[q*H+h, d*R+k] * svs[d][q*R+k,:]
Tensor attn_combine(const std::vector<Tensor>& svs, const Tensor& post, int h, int H);
// sum over (h,q,d,k) of ||ref_q + offset - target_k||^2 * scale (pairs slot k
// with target k); targets.size() == R
Tensor paired_target_sqdist(const Tensor& offsets, const Tensor& refs,
                            const std::vector<Vec2>& targets, int H, int D, int R, double scale);
// sum over (h,q,d,k) of post[q*H+h, d*R+k] * [sampling loc in rect] * scale;
// rect = (y0,y1,x0,x1) half-open; gradient flows into post only
Tensor region_weighted_mass(const Tensor& post, const Tensor& offsets, const Tensor& refs,
                            const std::array<double, 4>& rect, int H, int D, int R, double scale);

// finite-difference helper used by gradient tests
double central_difference(const std::function<double(double)>& f, double x0, double eps);

}  // namespace pointerlab
