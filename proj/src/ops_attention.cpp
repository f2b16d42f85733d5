#include <cmath>

#include "pointerlab/tensor.hpp"

namespace pointerlab {

namespace {

NodePtr make_op3(Shape shape, std::vector<double> value, std::vector<NodePtr> parents,
                 std::function<void(TensorNode&)> backward) {
    auto node = std::make_shared<TensorNode>();
    node->shape = std::move(shape);
    node->value = std::move(value);
    node->parents = std::move(parents);
    for (const auto& p : node->parents)
        if (p->requires_grad) {
            node->requires_grad = true;
            break;
        }
    if (node->requires_grad) node->backward_fn = std::move(backward);
    return node;
}

void check_offset_layout(const Tensor& offsets, const Tensor& refs, int H, int D, int R) {
    if (offsets.shape().size() != 2 || offsets.dim(1) != H * D * R * 2)
        throw ConfigError("offsets layout mismatch (expect (Q, H*D*R*2))");
    if (refs.shape().size() != 2 || refs.dim(1) != 2 || refs.dim(0) != offsets.dim(0))
        throw ConfigError("refs layout mismatch (expect (Q, 2))");
}

}  // namespace

Tensor make_sampling_locs(const Tensor& offsets, const Tensor& refs, int h, int d,
                          int H, int D, int R) {
    check_offset_layout(offsets, refs, H, D, R);
    const int q_count = offsets.dim(0);
    const int stride = H * D * R * 2;
    std::vector<double> out(static_cast<size_t>(q_count) * R * 2);
    for (int q = 0; q < q_count; ++q)
        for (int k = 0; k < R; ++k)
            for (int c = 0; c < 2; ++c) {
                int src = q * stride + ((h * D + d) * R + k) * 2 + c;
                out[(static_cast<size_t>(q) * R + k) * 2 + c] =
                    refs.data()[q * 2 + c] + offsets.data()[src];
            }
    auto po = offsets.node(), pr = refs.node();
    return Tensor(make_op3({q_count * R, 2}, std::move(out), {po, pr},
                           [po, pr, h, d, H, D, R, q_count, stride](TensorNode& nd) {
        const bool go = po->requires_grad, gr = pr->requires_grad;
        if (go) po->ensure_grad();
        if (gr) pr->ensure_grad();
        for (int q = 0; q < q_count; ++q)
            for (int k = 0; k < R; ++k)
                for (int c = 0; c < 2; ++c) {
                    double g = nd.grad[(static_cast<size_t>(q) * R + k) * 2 + c];
                    if (go) po->grad[q * stride + ((h * D + d) * R + k) * 2 + c] += g;
                    if (gr) pr->grad[q * 2 + c] += g;
                }
    }));
}

Tensor attn_combine(const std::vector<Tensor>& svs, const Tensor& post, int h, int H) {
    if (svs.empty()) throw ConfigError("attn_combine: no levels");
    const int D = static_cast<int>(svs.size());
    const int ch = svs[0].dim(1);
    if (post.shape().size() != 2 || post.dim(1) % D != 0)
        throw ConfigError("attn_combine: post shape mismatch");
    const int R = post.dim(1) / D;
    const int q_count = post.dim(0) / H;
    for (const auto& sv : svs)
        if (sv.dim(0) != q_count * R || sv.dim(1) != ch)
            throw ConfigError("attn_combine: sampled-value shape mismatch");

    std::vector<double> out(static_cast<size_t>(q_count) * ch, 0.0);
    for (int q = 0; q < q_count; ++q) {
        double* orow = out.data() + static_cast<size_t>(q) * ch;
        const double* arow = post.data() + (static_cast<size_t>(q) * H + h) * D * R;
        for (int d = 0; d < D; ++d) {
            const double* sval = svs[d].data();
            for (int k = 0; k < R; ++k) {
                double a = arow[d * R + k];
                const double* srow = sval + (static_cast<size_t>(q) * R + k) * ch;
                for (int c = 0; c < ch; ++c) orow[c] += a * srow[c];
            }
        }
    }
    std::vector<NodePtr> parents;
    for (const auto& sv : svs) parents.push_back(sv.node());
    parents.push_back(post.node());
    auto pp = post.node();
    std::vector<NodePtr> sv_nodes(parents.begin(), parents.end() - 1);
    return Tensor(make_op3({q_count, ch}, std::move(out), parents,
                           [sv_nodes, pp, h, H, D, R, ch, q_count](TensorNode& nd) {
        const bool gp = pp->requires_grad;
        if (gp) pp->ensure_grad();
        for (int d = 0; d < D; ++d)
            if (sv_nodes[d]->requires_grad) sv_nodes[d]->ensure_grad();
        for (int q = 0; q < q_count; ++q) {
            const double* grow = nd.grad.data() + static_cast<size_t>(q) * ch;
            const size_t abase = (static_cast<size_t>(q) * H + h) * D * R;
            for (int d = 0; d < D; ++d) {
                auto& svn = sv_nodes[d];
                for (int k = 0; k < R; ++k) {
                    const size_t soff = (static_cast<size_t>(q) * R + k) * ch;
                    double a = pp->value[abase + d * R + k];
                    double dot = 0.0;
                    for (int c = 0; c < ch; ++c) {
                        if (svn->requires_grad) svn->grad[soff + c] += a * grow[c];
                        dot += grow[c] * svn->value[soff + c];
                    }
                    if (gp) pp->grad[abase + d * R + k] += dot;
                }
            }
        }
    }));
}

Tensor paired_target_sqdist(const Tensor& offsets, const Tensor& refs,
                            const std::vector<Vec2>& targets, int H, int D, int R, double scale) {
    check_offset_layout(offsets, refs, H, D, R);
    if (static_cast<int>(targets.size()) != R)
        throw ConfigError("paired_target_sqdist: need exactly R targets");
    const int q_count = offsets.dim(0);
    const int stride = H * D * R * 2;
    double acc = 0.0;
    for (int q = 0; q < q_count; ++q)
        for (int h = 0; h < H; ++h)
            for (int d = 0; d < D; ++d)
                for (int k = 0; k < R; ++k)
                    for (int c = 0; c < 2; ++c) {
                        double loc = refs.data()[q * 2 + c] +
                                     offsets.data()[q * stride + ((h * D + d) * R + k) * 2 + c];
                        acc += sq(loc - targets[k][c]);
                    }
    auto po = offsets.node(), pr = refs.node();
    return Tensor(make_op3({1}, {acc * scale}, {po, pr},
                           [po, pr, targets, H, D, R, q_count, stride, scale](TensorNode& nd) {
        const bool go = po->requires_grad, gr = pr->requires_grad;
        if (go) po->ensure_grad();
        if (gr) pr->ensure_grad();
        const double g = nd.grad[0] * scale;
        for (int q = 0; q < q_count; ++q)
            for (int h = 0; h < H; ++h)
                for (int d = 0; d < D; ++d)
                    for (int k = 0; k < R; ++k)
                        for (int c = 0; c < 2; ++c) {
                            int src = q * stride + ((h * D + d) * R + k) * 2 + c;
                            double loc = pr->value[q * 2 + c] + po->value[src];
                            double gg = 2.0 * g * (loc - targets[k][c]);
                            if (go) po->grad[src] += gg;
                            if (gr) pr->grad[q * 2 + c] += gg;
                        }
    }));
}

Tensor region_weighted_mass(const Tensor& post, const Tensor& offsets, const Tensor& refs,
                            const std::array<double, 4>& rect, int H, int D, int R, double scale) {
    check_offset_layout(offsets, refs, H, D, R);
    const int q_count = offsets.dim(0);
    if (post.shape().size() != 2 || post.dim(0) != q_count * H || post.dim(1) != D * R)
        throw ConfigError("region_weighted_mass: post shape mismatch");
    const int stride = H * D * R * 2;
    // indicator per (q,h,d,k); treated as constant in backward
    std::vector<uint8_t> inside(static_cast<size_t>(q_count) * H * D * R);
    double acc = 0.0;
    for (int q = 0; q < q_count; ++q)
        for (int h = 0; h < H; ++h)
            for (int d = 0; d < D; ++d)
                for (int k = 0; k < R; ++k) {
                    int base = q * stride + ((h * D + d) * R + k) * 2;
                    double y = refs.data()[q * 2 + 0] + offsets.data()[base + 0];
                    double x = refs.data()[q * 2 + 1] + offsets.data()[base + 1];
                    bool in = y >= rect[0] && y < rect[1] && x >= rect[2] && x < rect[3];
                    inside[((static_cast<size_t>(q) * H + h) * D + d) * R + k] = in ? 1 : 0;
                    if (in) acc += post.data()[(static_cast<size_t>(q) * H + h) * D * R + d * R + k];
                }
    auto pp = post.node();
    auto po = offsets.node();
    auto pr = refs.node();
    return Tensor(make_op3({1}, {acc * scale}, {pp, po, pr},
                           [pp, inside, H, D, R, q_count, scale](TensorNode& nd) {
        if (!pp->requires_grad) return;
        pp->ensure_grad();
        const double g = nd.grad[0] * scale;
        for (size_t i = 0; i < inside.size(); ++i)
            if (inside[i]) pp->grad[i] += g;
    }));
}

}  // namespace pointerlab
