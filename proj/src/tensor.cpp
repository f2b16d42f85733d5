#include "pointerlab/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace pointerlab {

int64_t shape_size(const Shape& s) {
    int64_t n = 1;
    for (int d : s) n *= d;
    return n;
}

Tensor Tensor::zeros(const Shape& shape, bool requires_grad) {
    return full(shape, 0.0, requires_grad);
}

Tensor Tensor::full(const Shape& shape, double v, bool requires_grad) {
    auto node = std::make_shared<TensorNode>();
    node->shape = shape;
    node->value.assign(static_cast<size_t>(shape_size(shape)), v);
    node->requires_grad = requires_grad;
    return Tensor(node);
}

Tensor Tensor::from_data(const Shape& shape, std::vector<double> data, bool requires_grad) {
    if (static_cast<int64_t>(data.size()) != shape_size(shape))
        throw ConfigError("tensor data size does not match shape");
    auto node = std::make_shared<TensorNode>();
    node->shape = shape;
    node->value = std::move(data);
    node->requires_grad = requires_grad;
    return Tensor(node);
}

Tensor Tensor::scalar(double v) { return from_data({1}, {v}); }

double Tensor::item() const {
    if (size() != 1) throw ConfigError("item() on non-scalar tensor");
    return node_->value[0];
}

namespace {

// Iterative topological order over the parent DAG.
void topo_order(const NodePtr& root, std::vector<TensorNode*>& order) {
    std::unordered_set<TensorNode*> visited;
    std::vector<std::pair<TensorNode*, size_t>> stack;
    stack.emplace_back(root.get(), 0);
    visited.insert(root.get());
    while (!stack.empty()) {
        auto& [node, idx] = stack.back();
        if (idx < node->parents.size()) {
            TensorNode* next = node->parents[idx++].get();
            if (next->requires_grad && !visited.count(next)) {
                visited.insert(next);
                stack.emplace_back(next, 0);
            }
        } else {
            order.push_back(node);
            stack.pop_back();
        }
    }
}

NodePtr make_op(Shape shape, std::vector<double> value, std::vector<NodePtr> parents,
                std::function<void(TensorNode&)> backward) {
    auto node = std::make_shared<TensorNode>();
    node->shape = std::move(shape);
    node->value = std::move(value);
    node->parents = std::move(parents);
    for (const auto& p : node->parents) {
        if (p->requires_grad) {
            node->requires_grad = true;
            break;
        }
    }
    if (node->requires_grad) node->backward_fn = std::move(backward);
    return node;
}

void check_same_shape(const Tensor& a, const Tensor& b, const char* op) {
    if (a.shape() != b.shape()) throw ConfigError(std::string(op) + ": shape mismatch");
}

}  // namespace

void Tensor::backward() const {
    if (!node_) throw ConfigError("backward() on empty tensor");
    if (size() != 1) throw ConfigError("backward() requires a scalar loss");
    std::vector<TensorNode*> order;
    topo_order(node_, order);
    for (TensorNode* n : order) {
        n->ensure_grad();
        std::fill(n->grad.begin(), n->grad.end(), 0.0);
    }
    node_->grad[0] = 1.0;
    // order is child-before... parents last; walk in reverse insertion order
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        TensorNode* n = *it;
        if (n->backward_fn) n->backward_fn(*n);
    }
}

// ---------------------------------------------------------------- elementwise

Tensor add(const Tensor& a, const Tensor& b) {
    check_same_shape(a, b, "add");
    std::vector<double> out(a.values());
    const double* bv = b.data();
    for (size_t i = 0; i < out.size(); ++i) out[i] += bv[i];
    auto pa = a.node(), pb = b.node();
    return Tensor(make_op(a.shape(), std::move(out), {pa, pb}, [pa, pb](TensorNode& n) {
        if (pa->requires_grad) {
            pa->ensure_grad();
            for (size_t i = 0; i < n.grad.size(); ++i) pa->grad[i] += n.grad[i];
        }
        if (pb->requires_grad) {
            pb->ensure_grad();
            for (size_t i = 0; i < n.grad.size(); ++i) pb->grad[i] += n.grad[i];
        }
    }));
}

Tensor sub(const Tensor& a, const Tensor& b) {
    check_same_shape(a, b, "sub");
    std::vector<double> out(a.values());
    const double* bv = b.data();
    for (size_t i = 0; i < out.size(); ++i) out[i] -= bv[i];
    auto pa = a.node(), pb = b.node();
    return Tensor(make_op(a.shape(), std::move(out), {pa, pb}, [pa, pb](TensorNode& n) {
        if (pa->requires_grad) {
            pa->ensure_grad();
            for (size_t i = 0; i < n.grad.size(); ++i) pa->grad[i] += n.grad[i];
        }
        if (pb->requires_grad) {
            pb->ensure_grad();
            for (size_t i = 0; i < n.grad.size(); ++i) pb->grad[i] -= n.grad[i];
        }
    }));
}

Tensor mul(const Tensor& a, const Tensor& b) {
    check_same_shape(a, b, "mul");
    std::vector<double> out(a.values());
    const double* bv = b.data();
    for (size_t i = 0; i < out.size(); ++i) out[i] *= bv[i];
    auto pa = a.node(), pb = b.node();
    return Tensor(make_op(a.shape(), std::move(out), {pa, pb}, [pa, pb](TensorNode& n) {
        if (pa->requires_grad) {
            pa->ensure_grad();
            for (size_t i = 0; i < n.grad.size(); ++i) pa->grad[i] += n.grad[i] * pb->value[i];
        }
        if (pb->requires_grad) {
            pb->ensure_grad();
            for (size_t i = 0; i < n.grad.size(); ++i) pb->grad[i] += n.grad[i] * pa->value[i];
        }
    }));
}

Tensor ediv(const Tensor& a, const Tensor& b) {
    check_same_shape(a, b, "ediv");
    std::vector<double> out(a.values());
    const double* bv = b.data();
    for (size_t i = 0; i < out.size(); ++i) out[i] /= bv[i];
    auto pa = a.node(), pb = b.node();
    return Tensor(make_op(a.shape(), std::move(out), {pa, pb}, [pa, pb](TensorNode& n) {
        if (pa->requires_grad) {
            pa->ensure_grad();
            for (size_t i = 0; i < n.grad.size(); ++i) pa->grad[i] += n.grad[i] / pb->value[i];
        }
        if (pb->requires_grad) {
            pb->ensure_grad();
            for (size_t i = 0; i < n.grad.size(); ++i)
                pb->grad[i] -= n.grad[i] * pa->value[i] / (pb->value[i] * pb->value[i]);
        }
    }));
}

Tensor emin(const Tensor& a, const Tensor& b) {
    check_same_shape(a, b, "emin");
    std::vector<double> out(a.size());
    for (int64_t i = 0; i < a.size(); ++i) out[i] = std::min(a.data()[i], b.data()[i]);
    auto pa = a.node(), pb = b.node();
    return Tensor(make_op(a.shape(), std::move(out), {pa, pb}, [pa, pb](TensorNode& n) {
        for (size_t i = 0; i < n.grad.size(); ++i) {
            bool a_wins = pa->value[i] <= pb->value[i];
            NodePtr const& tgt = a_wins ? pa : pb;
            if (tgt->requires_grad) {
                tgt->ensure_grad();
                tgt->grad[i] += n.grad[i];
            }
        }
    }));
}

Tensor emax(const Tensor& a, const Tensor& b) {
    check_same_shape(a, b, "emax");
    std::vector<double> out(a.size());
    for (int64_t i = 0; i < a.size(); ++i) out[i] = std::max(a.data()[i], b.data()[i]);
    auto pa = a.node(), pb = b.node();
    return Tensor(make_op(a.shape(), std::move(out), {pa, pb}, [pa, pb](TensorNode& n) {
        for (size_t i = 0; i < n.grad.size(); ++i) {
            bool a_wins = pa->value[i] >= pb->value[i];
            NodePtr const& tgt = a_wins ? pa : pb;
            if (tgt->requires_grad) {
                tgt->ensure_grad();
                tgt->grad[i] += n.grad[i];
            }
        }
    }));
}

namespace {

Tensor unary_op(const Tensor& a, const std::function<double(double)>& f,
                std::function<void(TensorNode&, const NodePtr&)> backward) {
    std::vector<double> out(a.size());
    for (int64_t i = 0; i < a.size(); ++i) out[i] = f(a.data()[i]);
    auto pa = a.node();
    return Tensor(make_op(a.shape(), std::move(out), {pa},
                          [pa, backward = std::move(backward)](TensorNode& n) {
                              if (!pa->requires_grad) return;
                              pa->ensure_grad();
                              backward(n, pa);
                          }));
}

}  // namespace

Tensor neg(const Tensor& a) { return scale(a, -1.0); }

Tensor scale(const Tensor& a, double s) {
    return unary_op(a, [s](double v) { return v * s; }, [s](TensorNode& n, const NodePtr& p) {
        for (size_t i = 0; i < n.grad.size(); ++i) p->grad[i] += n.grad[i] * s;
    });
}

Tensor add_scalar(const Tensor& a, double s) {
    return unary_op(a, [s](double v) { return v + s; }, [](TensorNode& n, const NodePtr& p) {
        for (size_t i = 0; i < n.grad.size(); ++i) p->grad[i] += n.grad[i];
    });
}

Tensor relu(const Tensor& a) {
    return unary_op(a, [](double v) { return v > 0.0 ? v : 0.0; },
                    [](TensorNode& n, const NodePtr& p) {
                        for (size_t i = 0; i < n.grad.size(); ++i)
                            if (p->value[i] > 0.0) p->grad[i] += n.grad[i];
                    });
}

Tensor eabs(const Tensor& a) {
    return unary_op(a, [](double v) { return std::fabs(v); },
                    [](TensorNode& n, const NodePtr& p) {
                        for (size_t i = 0; i < n.grad.size(); ++i)
                            p->grad[i] += n.grad[i] * (p->value[i] > 0.0 ? 1.0 : (p->value[i] < 0.0 ? -1.0 : 0.0));
                    });
}

Tensor sigmoid(const Tensor& a) {
    std::vector<double> out(a.size());
    for (int64_t i = 0; i < a.size(); ++i) out[i] = 1.0 / (1.0 + std::exp(-a.data()[i]));
    auto pa = a.node();
    return Tensor(make_op(a.shape(), std::move(out), {pa}, [pa](TensorNode& n) {
        if (!pa->requires_grad) return;
        pa->ensure_grad();
        for (size_t i = 0; i < n.grad.size(); ++i) {
            double y = n.value[i];
            pa->grad[i] += n.grad[i] * y * (1.0 - y);
        }
    }));
}

Tensor eexp(const Tensor& a) {
    std::vector<double> out(a.size());
    for (int64_t i = 0; i < a.size(); ++i) out[i] = std::exp(a.data()[i]);
    auto pa = a.node();
    return Tensor(make_op(a.shape(), std::move(out), {pa}, [pa](TensorNode& n) {
        if (!pa->requires_grad) return;
        pa->ensure_grad();
        for (size_t i = 0; i < n.grad.size(); ++i) pa->grad[i] += n.grad[i] * n.value[i];
    }));
}

Tensor elog(const Tensor& a) {
    return unary_op(a, [](double v) { return std::log(std::max(v, 1e-300)); },
                    [](TensorNode& n, const NodePtr& p) {
                        for (size_t i = 0; i < n.grad.size(); ++i)
                            p->grad[i] += n.grad[i] / std::max(p->value[i], 1e-300);
                    });
}

Tensor clamp_st(const Tensor& a, double lo, double hi) {
    std::vector<double> out(a.size());
    for (int64_t i = 0; i < a.size(); ++i) {
        double v = a.data()[i];
        out[i] = v < lo ? lo : (v > hi ? hi : v);
    }
    auto pa = a.node();
    return Tensor(make_op(a.shape(), std::move(out), {pa}, [pa](TensorNode& n) {
        if (!pa->requires_grad) return;
        pa->ensure_grad();
        for (size_t i = 0; i < n.grad.size(); ++i) pa->grad[i] += n.grad[i];
    }));
}

// ---------------------------------------------------------------- reductions

Tensor sum_scaled(const Tensor& a, double s) {
    double acc = 0.0;
    for (int64_t i = 0; i < a.size(); ++i) acc += a.data()[i];
    auto pa = a.node();
    return Tensor(make_op({1}, {acc * s}, {pa}, [pa, s](TensorNode& n) {
        if (!pa->requires_grad) return;
        pa->ensure_grad();
        double g = n.grad[0] * s;
        for (size_t i = 0; i < pa->grad.size(); ++i) pa->grad[i] += g;
    }));
}

Tensor mean_all(const Tensor& a) { return sum_scaled(a, 1.0 / static_cast<double>(a.size())); }

// ------------------------------------------------------ linear algebra/shape

Tensor matmul(const Tensor& a, const Tensor& b) {
    if (a.shape().size() != 2 || b.shape().size() != 2 || a.dim(1) != b.dim(0))
        throw ConfigError("matmul: incompatible shapes");
    const int m = a.dim(0), k = a.dim(1), n = b.dim(1);
    std::vector<double> out(static_cast<size_t>(m) * n, 0.0);
    const double* av = a.data();
    const double* bv = b.data();
    for (int i = 0; i < m; ++i)
        for (int p = 0; p < k; ++p) {
            double s = av[i * k + p];
            if (s == 0.0) continue;
            const double* brow = bv + p * n;
            double* orow = out.data() + i * n;
            for (int j = 0; j < n; ++j) orow[j] += s * brow[j];
        }
    auto pa = a.node(), pb = b.node();
    return Tensor(make_op({m, n}, std::move(out), {pa, pb}, [pa, pb, m, k, n](TensorNode& nd) {
        if (pa->requires_grad) {
            pa->ensure_grad();
            for (int i = 0; i < m; ++i)
                for (int p = 0; p < k; ++p) {
                    double acc = 0.0;
                    const double* grow = nd.grad.data() + i * n;
                    const double* brow = pb->value.data() + p * n;
                    for (int j = 0; j < n; ++j) acc += grow[j] * brow[j];
                    pa->grad[i * k + p] += acc;
                }
        }
        if (pb->requires_grad) {
            pb->ensure_grad();
            for (int i = 0; i < m; ++i)
                for (int p = 0; p < k; ++p) {
                    double s = pa->value[i * k + p];
                    if (s == 0.0) continue;
                    const double* grow = nd.grad.data() + i * n;
                    double* brow = pb->grad.data() + p * n;
                    for (int j = 0; j < n; ++j) brow[j] += s * grow[j];
                }
        }
    }));
}

Tensor linear(const Tensor& x, const Tensor& w, const Tensor& b) {
    if (x.shape().size() != 2 || w.shape().size() != 2 || x.dim(1) != w.dim(1))
        throw ConfigError("linear: incompatible shapes");
    const int n = x.dim(0), in = x.dim(1), out_dim = w.dim(0);
    if (b.size() != out_dim) throw ConfigError("linear: bias size mismatch");
    std::vector<double> out(static_cast<size_t>(n) * out_dim);
    const double* xv = x.data();
    const double* wv = w.data();
    const double* bv = b.data();
    for (int i = 0; i < n; ++i) {
        double* orow = out.data() + i * out_dim;
        for (int o = 0; o < out_dim; ++o) orow[o] = bv[o];
        const double* xrow = xv + i * in;
        for (int p = 0; p < in; ++p) {
            double s = xrow[p];
            if (s == 0.0) continue;
            const double* wcol = wv + 0;  // w stored (out,in): walk o with stride in
            for (int o = 0; o < out_dim; ++o) orow[o] += s * wcol[o * in + p];
        }
    }
    auto px = x.node(), pw = w.node(), pb = b.node();
    return Tensor(make_op({n, out_dim}, std::move(out), {px, pw, pb},
                          [px, pw, pb, n, in, out_dim](TensorNode& nd) {
        if (px->requires_grad) {
            px->ensure_grad();
            for (int i = 0; i < n; ++i) {
                const double* grow = nd.grad.data() + i * out_dim;
                double* xrow = px->grad.data() + i * in;
                for (int o = 0; o < out_dim; ++o) {
                    double g = grow[o];
                    if (g == 0.0) continue;
                    const double* wrow = pw->value.data() + o * in;
                    for (int p = 0; p < in; ++p) xrow[p] += g * wrow[p];
                }
            }
        }
        if (pw->requires_grad) {
            pw->ensure_grad();
            for (int i = 0; i < n; ++i) {
                const double* grow = nd.grad.data() + i * out_dim;
                const double* xrow = px->value.data() + i * in;
                for (int o = 0; o < out_dim; ++o) {
                    double g = grow[o];
                    if (g == 0.0) continue;
                    double* wrow = pw->grad.data() + o * in;
                    for (int p = 0; p < in; ++p) wrow[p] += g * xrow[p];
                }
            }
        }
        if (pb->requires_grad) {
            pb->ensure_grad();
            for (int i = 0; i < n; ++i)
                for (int o = 0; o < out_dim; ++o) pb->grad[o] += nd.grad[i * out_dim + o];
        }
    }));
}

Tensor softmax_rows(const Tensor& x, int row_len) {
    if (x.size() % row_len != 0) throw ConfigError("softmax_rows: size not divisible by row_len");
    const int64_t rows = x.size() / row_len;
    std::vector<double> out(x.size());
    const double* xv = x.data();
    for (int64_t r = 0; r < rows; ++r) {
        const double* in = xv + r * row_len;
        double* o = out.data() + r * row_len;
        double mx = in[0];
        for (int j = 1; j < row_len; ++j) mx = std::max(mx, in[j]);
        double denom = 0.0;
        for (int j = 0; j < row_len; ++j) {
            o[j] = std::exp(in[j] - mx);
            denom += o[j];
        }
        for (int j = 0; j < row_len; ++j) o[j] /= denom;
    }
    auto pa = x.node();
    return Tensor(make_op(x.shape(), std::move(out), {pa}, [pa, rows, row_len](TensorNode& n) {
        if (!pa->requires_grad) return;
        pa->ensure_grad();
        for (int64_t r = 0; r < rows; ++r) {
            const double* y = n.value.data() + r * row_len;
            const double* g = n.grad.data() + r * row_len;
            double dot = 0.0;
            for (int j = 0; j < row_len; ++j) dot += y[j] * g[j];
            double* px = pa->grad.data() + r * row_len;
            for (int j = 0; j < row_len; ++j) px[j] += y[j] * (g[j] - dot);
        }
    }));
}

Tensor layer_norm_rows(const Tensor& x, const Tensor& gamma, const Tensor& beta,
                       int row_len, double eps) {
    if (x.size() % row_len != 0) throw ConfigError("layer_norm_rows: bad row_len");
    if (gamma.size() != row_len || beta.size() != row_len)
        throw ConfigError("layer_norm_rows: gamma/beta size mismatch");
    const int64_t rows = x.size() / row_len;
    std::vector<double> out(x.size());
    std::vector<double> means(rows), inv_stds(rows);
    const double* xv = x.data();
    for (int64_t r = 0; r < rows; ++r) {
        const double* in = xv + r * row_len;
        double mean = 0.0;
        for (int j = 0; j < row_len; ++j) mean += in[j];
        mean /= row_len;
        double var = 0.0;
        for (int j = 0; j < row_len; ++j) var += sq(in[j] - mean);
        var /= row_len;
        double inv = 1.0 / std::sqrt(var + eps);
        means[r] = mean;
        inv_stds[r] = inv;
        double* o = out.data() + r * row_len;
        for (int j = 0; j < row_len; ++j)
            o[j] = (in[j] - mean) * inv * gamma.data()[j] + beta.data()[j];
    }
    auto px = x.node(), pg = gamma.node(), pb = beta.node();
    return Tensor(make_op(x.shape(), std::move(out), {px, pg, pb},
                          [px, pg, pb, rows, row_len, means, inv_stds](TensorNode& n) {
        for (int64_t r = 0; r < rows; ++r) {
            const double* in = px->value.data() + r * row_len;
            const double* g = n.grad.data() + r * row_len;
            double mean = means[r], inv = inv_stds[r];
            if (pg->requires_grad) {
                pg->ensure_grad();
                for (int j = 0; j < row_len; ++j)
                    pg->grad[j] += g[j] * (in[j] - mean) * inv;
            }
            if (pb->requires_grad) {
                pb->ensure_grad();
                for (int j = 0; j < row_len; ++j) pb->grad[j] += g[j];
            }
            if (px->requires_grad) {
                px->ensure_grad();
                // dL/dx = inv/N * (N*gy - sum(gy) - xhat * sum(gy*xhat)), gy = g*gamma
                double sum_gy = 0.0, sum_gy_xhat = 0.0;
                for (int j = 0; j < row_len; ++j) {
                    double gy = g[j] * pg->value[j];
                    double xhat = (in[j] - mean) * inv;
                    sum_gy += gy;
                    sum_gy_xhat += gy * xhat;
                }
                double* px_g = px->grad.data() + r * row_len;
                for (int j = 0; j < row_len; ++j) {
                    double gy = g[j] * pg->value[j];
                    double xhat = (in[j] - mean) * inv;
                    px_g[j] += inv * (gy - (sum_gy + xhat * sum_gy_xhat) / row_len);
                }
            }
        }
    }));
}

Tensor reshape(const Tensor& x, const Shape& shape) {
    if (shape_size(shape) != x.size()) throw ConfigError("reshape: size mismatch");
    auto pa = x.node();
    return Tensor(make_op(shape, x.values(), {pa}, [pa](TensorNode& n) {
        if (!pa->requires_grad) return;
        pa->ensure_grad();
        for (size_t i = 0; i < n.grad.size(); ++i) pa->grad[i] += n.grad[i];
    }));
}

Tensor concat_cols(const std::vector<Tensor>& xs) {
    if (xs.empty()) throw ConfigError("concat_cols: empty input");
    const int n = xs[0].dim(0);
    int total = 0;
    for (const auto& t : xs) {
        if (t.shape().size() != 2 || t.dim(0) != n) throw ConfigError("concat_cols: shape mismatch");
        total += t.dim(1);
    }
    std::vector<double> out(static_cast<size_t>(n) * total);
    std::vector<NodePtr> parents;
    std::vector<int> widths;
    int off = 0;
    for (const auto& t : xs) {
        int c = t.dim(1);
        for (int i = 0; i < n; ++i)
            std::copy_n(t.data() + i * c, c, out.data() + i * total + off);
        off += c;
        parents.push_back(t.node());
        widths.push_back(c);
    }
    return Tensor(make_op({n, total}, std::move(out), parents,
                          [parents, widths, n, total](TensorNode& nd) {
        int off2 = 0;
        for (size_t p = 0; p < parents.size(); ++p) {
            int c = widths[p];
            if (parents[p]->requires_grad) {
                parents[p]->ensure_grad();
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < c; ++j)
                        parents[p]->grad[i * c + j] += nd.grad[i * total + off2 + j];
            }
            off2 += c;
        }
    }));
}

Tensor slice_cols(const Tensor& x, int start, int len) {
    if (x.shape().size() != 2 || start < 0 || start + len > x.dim(1))
        throw ConfigError("slice_cols: out of range");
    const int n = x.dim(0), c = x.dim(1);
    std::vector<double> out(static_cast<size_t>(n) * len);
    for (int i = 0; i < n; ++i)
        std::copy_n(x.data() + i * c + start, len, out.data() + i * len);
    auto pa = x.node();
    return Tensor(make_op({n, len}, std::move(out), {pa}, [pa, start, len, n, c](TensorNode& nd) {
        if (!pa->requires_grad) return;
        pa->ensure_grad();
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < len; ++j) pa->grad[i * c + start + j] += nd.grad[i * len + j];
    }));
}

Tensor gather_rows(const Tensor& x, const std::vector<int>& idx) {
    if (x.shape().size() != 2) throw ConfigError("gather_rows: expects 2-d tensor");
    const int c = x.dim(1);
    std::vector<double> out(idx.size() * static_cast<size_t>(c));
    for (size_t i = 0; i < idx.size(); ++i) {
        if (idx[i] < 0 || idx[i] >= x.dim(0)) throw ConfigError("gather_rows: index out of range");
        std::copy_n(x.data() + idx[i] * c, c, out.data() + i * c);
    }
    auto pa = x.node();
    return Tensor(make_op({static_cast<int>(idx.size()), c}, std::move(out), {pa},
                          [pa, idx, c](TensorNode& nd) {
        if (!pa->requires_grad) return;
        pa->ensure_grad();
        for (size_t i = 0; i < idx.size(); ++i)
            for (int j = 0; j < c; ++j) pa->grad[idx[i] * c + j] += nd.grad[i * c + j];
    }));
}

double central_difference(const std::function<double(double)>& f, double x0, double eps) {
    return (f(x0 + eps) - f(x0 - eps)) / (2.0 * eps);
}

}  // namespace pointerlab
