#include <algorithm>
#include <cmath>

#include "pointerlab/tensor.hpp"

namespace pointerlab {

namespace {

NodePtr make_op2(Shape shape, std::vector<double> value, std::vector<NodePtr> parents,
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

}  // namespace

Tensor conv2d(const Tensor& x, const Tensor& w, const Tensor& b, int stride, int pad) {
    if (x.shape().size() != 3 || w.shape().size() != 4) throw ConfigError("conv2d: bad ranks");
    const int cin = x.dim(0), hin = x.dim(1), win = x.dim(2);
    const int cout = w.dim(0), kh = w.dim(2), kw = w.dim(3);
    if (w.dim(1) != cin) throw ConfigError("conv2d: channel mismatch");
    if (b.size() != cout) throw ConfigError("conv2d: bias mismatch");
    const int hout = (hin + 2 * pad - kh) / stride + 1;
    const int wout = (win + 2 * pad - kw) / stride + 1;
    if (hout <= 0 || wout <= 0) throw ConfigError("conv2d: empty output");

    std::vector<double> out(static_cast<size_t>(cout) * hout * wout);
    const double* xv = x.data();
    const double* wv = w.data();
    for (int oc = 0; oc < cout; ++oc) {
        double* oplane = out.data() + static_cast<size_t>(oc) * hout * wout;
        double bias = b.data()[oc];
        for (int oy = 0; oy < hout; ++oy)
            for (int ox = 0; ox < wout; ++ox) {
                double acc = bias;
                const int iy0 = oy * stride - pad, ix0 = ox * stride - pad;
                for (int ic = 0; ic < cin; ++ic) {
                    const double* xplane = xv + static_cast<size_t>(ic) * hin * win;
                    const double* wk = wv + ((static_cast<size_t>(oc) * cin + ic) * kh) * kw;
                    for (int ky = 0; ky < kh; ++ky) {
                        int iy = iy0 + ky;
                        if (iy < 0 || iy >= hin) continue;
                        for (int kx = 0; kx < kw; ++kx) {
                            int ix = ix0 + kx;
                            if (ix < 0 || ix >= win) continue;
                            acc += wk[ky * kw + kx] * xplane[iy * win + ix];
                        }
                    }
                }
                oplane[oy * wout + ox] = acc;
            }
    }
    auto px = x.node(), pw = w.node(), pb = b.node();
    return Tensor(make_op2({cout, hout, wout}, std::move(out), {px, pw, pb},
                           [=](TensorNode& nd) {
        const bool gx = px->requires_grad, gw = pw->requires_grad, gb = pb->requires_grad;
        if (gx) px->ensure_grad();
        if (gw) pw->ensure_grad();
        if (gb) pb->ensure_grad();
        for (int oc = 0; oc < cout; ++oc) {
            const double* gplane = nd.grad.data() + static_cast<size_t>(oc) * hout * wout;
            for (int oy = 0; oy < hout; ++oy)
                for (int ox = 0; ox < wout; ++ox) {
                    double g = gplane[oy * wout + ox];
                    if (g == 0.0) continue;
                    if (gb) pb->grad[oc] += g;
                    const int iy0 = oy * stride - pad, ix0 = ox * stride - pad;
                    for (int ic = 0; ic < cin; ++ic) {
                        const size_t xoff = static_cast<size_t>(ic) * hin * win;
                        const size_t woff = (static_cast<size_t>(oc) * cin + ic) * kh * kw;
                        for (int ky = 0; ky < kh; ++ky) {
                            int iy = iy0 + ky;
                            if (iy < 0 || iy >= hin) continue;
                            for (int kx = 0; kx < kw; ++kx) {
                                int ix = ix0 + kx;
                                if (ix < 0 || ix >= win) continue;
                                if (gw) pw->grad[woff + ky * kw + kx] += g * px->value[xoff + iy * win + ix];
                                if (gx) px->grad[xoff + iy * win + ix] += g * pw->value[woff + ky * kw + kx];
                            }
                        }
                    }
                }
        }
    }));
}

Tensor grid_sample_rows(const Tensor& values, int h, int w, const Tensor& locs) {
    if (values.shape().size() != 2 || values.dim(0) != h * w)
        throw ConfigError("grid_sample_rows: values must be (h*w, c)");
    if (locs.shape().size() != 2 || locs.dim(1) != 2)
        throw ConfigError("grid_sample_rows: locs must be (n, 2)");
    const int c = values.dim(1);
    const int n = locs.dim(0);
    std::vector<double> out(static_cast<size_t>(n) * c, 0.0);
    const double* vv = values.data();
    const double* lv = locs.data();
    for (int i = 0; i < n; ++i) {
        const double gy = lv[i * 2 + 0] * h - 0.5;
        const double gx = lv[i * 2 + 1] * w - 0.5;
        const int y0 = static_cast<int>(std::floor(gy));
        const int x0 = static_cast<int>(std::floor(gx));
        const double wy = gy - y0, wx = gx - x0;
        double* orow = out.data() + static_cast<size_t>(i) * c;
        for (int dy = 0; dy < 2; ++dy) {
            int yy = y0 + dy;
            if (yy < 0 || yy >= h) continue;
            double fy = dy ? wy : 1.0 - wy;
            for (int dx = 0; dx < 2; ++dx) {
                int xx = x0 + dx;
                if (xx < 0 || xx >= w) continue;
                double weight = fy * (dx ? wx : 1.0 - wx);
                if (weight == 0.0) continue;
                const double* vrow = vv + (static_cast<size_t>(yy) * w + xx) * c;
                for (int ch = 0; ch < c; ++ch) orow[ch] += weight * vrow[ch];
            }
        }
    }
    auto pv = values.node(), pl = locs.node();
    return Tensor(make_op2({n, c}, std::move(out), {pv, pl}, [=](TensorNode& nd) {
        const bool gvals = pv->requires_grad, glocs = pl->requires_grad;
        if (gvals) pv->ensure_grad();
        if (glocs) pl->ensure_grad();
        for (int i = 0; i < n; ++i) {
            const double gy = pl->value[i * 2 + 0] * h - 0.5;
            const double gx = pl->value[i * 2 + 1] * w - 0.5;
            const int y0 = static_cast<int>(std::floor(gy));
            const int x0 = static_cast<int>(std::floor(gx));
            const double wy = gy - y0, wx = gx - x0;
            const double* grow = nd.grad.data() + static_cast<size_t>(i) * c;
            double d_gy = 0.0, d_gx = 0.0;
            for (int dy = 0; dy < 2; ++dy) {
                int yy = y0 + dy;
                if (yy < 0 || yy >= h) continue;
                double fy = dy ? wy : 1.0 - wy;
                double dfy = dy ? 1.0 : -1.0;
                for (int dx = 0; dx < 2; ++dx) {
                    int xx = x0 + dx;
                    if (xx < 0 || xx >= w) continue;
                    double fx = dx ? wx : 1.0 - wx;
                    double dfx = dx ? 1.0 : -1.0;
                    const size_t voff = (static_cast<size_t>(yy) * w + xx) * c;
                    double dot = 0.0;
                    for (int ch = 0; ch < c; ++ch) {
                        double g = grow[ch];
                        if (gvals) pv->grad[voff + ch] += g * fy * fx;
                        dot += g * pv->value[voff + ch];
                    }
                    d_gy += dot * dfy * fx;
                    d_gx += dot * fy * dfx;
                }
            }
            if (glocs) {
                pl->grad[i * 2 + 0] += d_gy * h;
                pl->grad[i * 2 + 1] += d_gx * w;
            }
        }
    }));
}

Tensor masked_add(const Tensor& x, const Tensor& e, const std::vector<uint8_t>& mask) {
    if (x.shape() != e.shape()) throw ConfigError("masked_add: shape mismatch");
    if (static_cast<int64_t>(mask.size()) != x.size())
        throw ConfigError("masked_add: mask size mismatch");
    std::vector<double> out(x.values());
    for (size_t i = 0; i < out.size(); ++i)
        if (mask[i]) out[i] += e.data()[i];
    auto px = x.node(), pe = e.node();
    // mask copied into the closure; cheap at frame sizes used here
    return Tensor(make_op2(x.shape(), std::move(out), {px, pe}, [px, pe, mask](TensorNode& nd) {
        if (px->requires_grad) {
            px->ensure_grad();
            for (size_t i = 0; i < nd.grad.size(); ++i) px->grad[i] += nd.grad[i];
        }
        if (pe->requires_grad) {
            pe->ensure_grad();
            for (size_t i = 0; i < nd.grad.size(); ++i)
                if (mask[i]) pe->grad[i] += nd.grad[i];
        }
    }));
}

Tensor cross_entropy_rows(const Tensor& logits, const std::vector<int>& targets,
                          const std::vector<double>& class_weights, double normalizer) {
    if (logits.shape().size() != 2) throw ConfigError("cross_entropy_rows: expects (n,k)");
    const int n = logits.dim(0), k = logits.dim(1);
    if (static_cast<int>(targets.size()) != n) throw ConfigError("cross_entropy_rows: target count");
    if (static_cast<int>(class_weights.size()) != k)
        throw ConfigError("cross_entropy_rows: weight count");
    std::vector<double> probs(static_cast<size_t>(n) * k);
    double loss = 0.0;
    for (int i = 0; i < n; ++i) {
        const double* row = logits.data() + i * k;
        double mx = row[0];
        for (int j = 1; j < k; ++j) mx = std::max(mx, row[j]);
        double denom = 0.0;
        double* prow = probs.data() + i * k;
        for (int j = 0; j < k; ++j) {
            prow[j] = std::exp(row[j] - mx);
            denom += prow[j];
        }
        for (int j = 0; j < k; ++j) prow[j] /= denom;
        loss += class_weights[targets[i]] * (-std::log(std::max(prow[targets[i]], 1e-300)));
    }
    loss /= normalizer;
    auto pl = logits.node();
    return Tensor(make_op2({1}, {loss}, {pl},
                           [pl, probs, targets, class_weights, normalizer, n, k](TensorNode& nd) {
        if (!pl->requires_grad) return;
        pl->ensure_grad();
        const double g = nd.grad[0] / normalizer;
        for (int i = 0; i < n; ++i) {
            const double wt = class_weights[targets[i]];
            const double* prow = probs.data() + i * k;
            double* grow = pl->grad.data() + i * k;
            for (int j = 0; j < k; ++j) {
                double y = (j == targets[i]) ? 1.0 : 0.0;
                grow[j] += g * wt * (prow[j] - y);
            }
        }
    }));
}

Tensor focal_heatmap_loss(const Tensor& logits, const std::vector<double>& target,
                          double alpha, double beta) {
    if (static_cast<int64_t>(target.size()) != logits.size())
        throw ConfigError("focal_heatmap_loss: target size mismatch");
    const int64_t n = logits.size();
    std::vector<double> p(n);
    int num_pos = 0;
    double loss = 0.0;
    for (int64_t i = 0; i < n; ++i) {
        p[i] = 1.0 / (1.0 + std::exp(-logits.data()[i]));
        double pc = std::min(std::max(p[i], 1e-12), 1.0 - 1e-12);
        if (target[i] >= 1.0) {
            ++num_pos;
            loss -= std::pow(1.0 - pc, alpha) * std::log(pc);
        } else {
            loss -= std::pow(1.0 - target[i], beta) * std::pow(pc, alpha) * std::log(1.0 - pc);
        }
    }
    const double norm = std::max(1, num_pos);
    loss /= norm;
    auto pl = logits.node();
    return Tensor(make_op2({1}, {loss}, {pl}, [pl, p, target, alpha, beta, norm, n](TensorNode& nd) {
        if (!pl->requires_grad) return;
        pl->ensure_grad();
        const double g = nd.grad[0] / norm;
        for (int64_t i = 0; i < n; ++i) {
            double pc = std::min(std::max(p[i], 1e-12), 1.0 - 1e-12);
            double dp;  // d(loss_i)/dp
            if (target[i] >= 1.0) {
                dp = alpha * std::pow(1.0 - pc, alpha - 1.0) * std::log(pc) -
                     std::pow(1.0 - pc, alpha) / pc;
            } else {
                double w = std::pow(1.0 - target[i], beta);
                dp = w * (std::pow(pc, alpha) / (1.0 - pc) -
                          alpha * std::pow(pc, alpha - 1.0) * std::log(1.0 - pc));
            }
            pl->grad[i] += g * dp * p[i] * (1.0 - p[i]);  // chain through sigmoid
        }
    }));
}

}  // namespace pointerlab
