// SPDX-License-Identifier: Apache-2.0
//
// voxelrf: voxel-grid radiance fields for wireless spatial spectrum synthesis
// Copyright (C) 2026 voxelrf contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "voxelrf/field_model.hpp"

#include <algorithm>

namespace voxelrf
{
    void PositionalEncoding::encode(std::span<const double> input, std::span<double> out) const
    {
        if (out.size() != std::size_t(width(int(input.size()))))
            throw ContractError("positional encoding output has the wrong width");
        std::size_t o = 0;
        for (double p : input)
        {
            // Frequencies double per level, so use the double-angle identities after the first.
            double s = std::sin(M_PI * p);
            double c = std::cos(M_PI * p);
            for (int l = 0; l < levels; ++l)
            {
                out[o++] = s;
                out[o++] = c;
                const double s2 = 2.0 * s * c;
                const double c2 = (c - s) * (c + s);
                s = s2;
                c = c2;
            }
        }
    }

    std::vector<double> positional_encode(std::span<const double> input, const PositionalEncoding &cfg)
    {
        if (cfg.levels < 1)
            throw ContractError("positional encoding needs at least one level");
        std::vector<double> out(cfg.width(int(input.size())));
        cfg.encode(input, out);
        return out;
    }

    namespace
    {
        double activate(Activation a, double v)
        {
            switch (a)
            {
            case Activation::relu:
                return v > 0.0 ? v : 0.0;
            case Activation::sigmoid:
                return sigmoid(v);
            case Activation::none:
                break;
            }
            return v;
        }

        std::vector<std::uint32_t> grid_shape(const VoxelGrid &g)
        {
            return {std::uint32_t(g.dims().x), std::uint32_t(g.dims().y), std::uint32_t(g.dims().z), std::uint32_t(g.channels())};
        }

        // y += a * w over n contiguous entries.
        inline void axpy(double a, const float *w, double *y, std::size_t n)
        {
            for (std::size_t i = 0; i < n; ++i)
                y[i] += a * double(w[i]);
        }

        inline void axpy(double a, const double *x, double *y, std::size_t n)
        {
            for (std::size_t i = 0; i < n; ++i)
                y[i] += a * x[i];
        }

        inline double dot(const float *w, const double *x, std::size_t n)
        {
            // Independent partial sums so the loop vectorises without reassociation flags.
            double acc[8] = {};
            std::size_t i = 0;
            for (; i + 8 <= n; i += 8)
                for (int l = 0; l < 8; ++l)
                    acc[l] += double(w[i + l]) * x[i + l];
            for (; i < n; ++i)
                acc[0] += double(w[i]) * x[i];
            return ((acc[0] + acc[1]) + (acc[2] + acc[3])) + ((acc[4] + acc[5]) + (acc[6] + acc[7]));
        }

        // y[r] += sum_k W(r, col0 + k) x[k]
        inline void accumulate_columns(const DenseLayer &layer, int col0, std::span<const double> x, std::span<double> y)
        {
            const std::size_t out = std::size_t(layer.out);
            for (std::size_t k = 0; k < x.size(); ++k)
                axpy(x[k], layer.weight.data() + (col0 + k) * out, y.data(), out);
        }
    }

    std::vector<double> Mlp::forward(std::span<const double> input) const
    {
        if (int(input.size()) != input_width())
            throw ContractError("MLP input width mismatch");
        std::vector<double> cur(input.begin(), input.end());
        for (std::size_t li = 0; li < layers.size(); ++li)
        {
            const DenseLayer &layer = layers[li];
            const Activation act = li + 1 == layers.size() ? output_activation : hidden_activation;
            std::vector<double> next(layer.out);
            for (int r = 0; r < layer.out; ++r)
            {
                double acc = layer.bias[r];
                for (int k = 0; k < layer.in; ++k)
                    acc += double(layer.at(r, k)) * cur[k];
                next[r] = activate(act, acc);
            }
            cur = std::move(next);
        }
        return cur;
    }

    Mlp make_mlp(const std::vector<int> &widths, Activation hidden, Activation output, Rng &rng)
    {
        if (widths.size() < 2)
            throw ContractError("an MLP needs an input and an output width");
        Mlp mlp;
        mlp.hidden_activation = hidden;
        mlp.output_activation = output;
        for (std::size_t i = 0; i + 1 < widths.size(); ++i)
        {
            DenseLayer layer;
            layer.in = widths[i];
            layer.out = widths[i + 1];
            if (layer.in < 1 || layer.out < 1)
                throw ContractError("MLP widths must be positive");
            const double bound = std::sqrt(6.0 / (layer.in + layer.out));
            layer.weight.resize(std::size_t(layer.in) * layer.out);
            for (float &w : layer.weight)
                w = static_cast<float>(rng.uniform(-bound, bound));
            layer.bias.assign(layer.out, 0.0f);
            mlp.layers.push_back(std::move(layer));
        }
        return mlp;
    }

    Vec3 FieldModel::normalise(const Vec3 &p) const
    {
        const Aabb &b = bbox();
        const Vec3 ext = b.extent();
        return {2.0 * (p.x - b.min_corner.x) / ext.x - 1.0,
                2.0 * (p.y - b.min_corner.y) / ext.y - 1.0,
                2.0 * (p.z - b.min_corner.z) / ext.z - 1.0};
    }

    std::vector<TensorView> FieldModel::tensors()
    {
        std::vector<TensorView> out;
        out.push_back({"density_grid", grid_shape(density), density.values(), true});
        out.push_back({"feature_grid", grid_shape(feature), feature.values(), true});
        auto add_mlp = [&](const std::string &prefix, Mlp &mlp)
        {
            for (std::size_t i = 0; i < mlp.layers.size(); ++i)
            {
                DenseLayer &l = mlp.layers[i];
                const std::string base = prefix + "." + std::to_string(i);
                out.push_back({base + ".weight", {std::uint32_t(l.in), std::uint32_t(l.out)}, l.weight, false});
                out.push_back({base + ".bias", {std::uint32_t(l.out)}, l.bias, false});
            }
        };
        add_mlp("deform", deform);
        add_mlp("radiance", radiance);
        return out;
    }

    std::vector<ConstTensorView> FieldModel::tensors() const
    {
        std::vector<ConstTensorView> out;
        for (auto &t : const_cast<FieldModel *>(this)->tensors())
            out.push_back({t.name, t.shape, t.data, t.is_grid});
        return out;
    }

    void FieldModel::validate() const
    {
        if (density.channels() != 1)
            throw ContractError("density grid must have exactly one channel");
        if (!(feature.dims() == density.dims()) || !(feature.bbox() == density.bbox()))
            throw ContractError("density and feature grids must share dims and bbox");
        if (enc_pos.levels < 1 || enc_dir.levels < 1)
            throw ContractError("encoding levels must be >= 1");
        const int F = feature.channels();
        const int pos_w = enc_pos.width(3);
        const int dir_w = enc_dir.width(3);
        auto check = [](const Mlp &mlp, int in, int out, const char *name)
        {
            if (mlp.layers.size() != 2)
                throw ContractError(std::string(name) + " must have exactly two layers");
            if (mlp.input_width() != in || mlp.output_width() != out)
                throw ContractError(std::string(name) + " input/output widths do not match the model");
            if (mlp.layers[0].out != mlp.layers[1].in)
                throw ContractError(std::string(name) + " layer widths do not chain");
            for (const auto &l : mlp.layers)
                if (l.weight.size() != std::size_t(l.in) * l.out || l.bias.size() != std::size_t(l.out))
                    throw ContractError(std::string(name) + " parameter sizes are inconsistent");
        };
        check(deform, 2 * pos_w, F, "deformation network");
        check(radiance, F + dir_w, 1, "radiance network");
        if (deform.layers[0].out != radiance.layers[0].out)
            throw ContractError("deformation and radiance networks must share the hidden width");
        if (radiance.output_activation != Activation::sigmoid || deform.output_activation != Activation::none)
            throw ContractError("unexpected output activations");
    }

    FieldModel init_model(const ModelShape &shape, std::uint64_t seed)
    {
        if (shape.feature_dim < 1 || shape.hidden_width < 1)
            throw ContractError("feature_dim and hidden_width must be positive");
        Rng rng(seed);
        FieldModel m;
        m.density = init_grid(shape.dims, 1, shape.bbox, 0.0f);
        m.feature = init_grid(shape.dims, shape.feature_dim, shape.bbox, 0.0f);
        m.enc_pos = PositionalEncoding{shape.position_levels};
        m.enc_dir = PositionalEncoding{shape.direction_levels};
        m.density_bias = shape.density_bias;
        m.deformation_enabled = shape.deformation;
        const int pos_w = m.enc_pos.width(3);
        const int dir_w = m.enc_dir.width(3);
        m.deform = make_mlp({2 * pos_w, shape.hidden_width, shape.feature_dim}, Activation::relu, Activation::none, rng);
        m.radiance = make_mlp({shape.feature_dim + dir_w, shape.hidden_width, 1}, Activation::relu, Activation::sigmoid, rng);
        m.validate();
        return m;
    }

    GradientSet GradientSet::zeros_like(const FieldModel &model)
    {
        GradientSet g;
        for (const auto &t : model.tensors())
            g.buffers.emplace_back(t.data.size(), 0.0);
        return g;
    }

    void GradientSet::zero()
    {
        for (auto &b : buffers)
            std::fill(b.begin(), b.end(), 0.0);
    }

    bool GradientSet::congruent_with(const FieldModel &model) const
    {
        const auto ts = model.tensors();
        if (ts.size() != buffers.size())
            return false;
        for (std::size_t i = 0; i < ts.size(); ++i)
            if (ts[i].data.size() != buffers[i].size())
                return false;
        return true;
    }

    void GradientSet::add(const GradientSet &other)
    {
        if (other.buffers.size() != buffers.size())
            throw ContractError("gradient sets are not congruent");
        for (std::size_t i = 0; i < buffers.size(); ++i)
        {
            if (other.buffers[i].size() != buffers[i].size())
                throw ContractError("gradient sets are not congruent");
            for (std::size_t k = 0; k < buffers[i].size(); ++k)
                buffers[i][k] += other.buffers[i][k];
        }
    }

    void evaluate_density(const FieldModel &model, const Vec3 &x, SampleState &state)
    {
        state.position = x;
        state.stencil = model.density.stencil(x);
        state.raw_density = model.density.gather_scalar(state.stencil);
        state.sigma = softplus(state.raw_density + model.density_bias);
    }

    double query_density(const FieldModel &model, const Vec3 &x)
    {
        SampleState s;
        evaluate_density(model, x, s);
        return s.sigma;
    }

    RayConditioning condition_ray(const FieldModel &model, const Vec3 &tx, const Vec3 &dir)
    {
        if (!tx.finite() || !dir.finite())
            throw ContractError("non-finite tx or direction");
        if (std::abs(dir.norm() - 1.0) > 1e-6)
            throw ContractError("emission direction must be unit length, |dir| = " + std::to_string(dir.norm()));
        RayConditioning c;
        c.tx = tx;
        c.dir = dir;
        const Vec3 txn = model.normalise(tx);
        const double txa[3] = {txn.x, txn.y, txn.z};
        const double da[3] = {dir.x, dir.y, dir.z};
        c.enc_tx = positional_encode(txa, model.enc_pos);
        c.enc_dir = positional_encode(da, model.enc_dir);

        const int F = model.feature_dim();
        const DenseLayer &d0 = model.deform.layers[0];
        const DenseLayer &r0 = model.radiance.layers[0];
        c.deform_pre.assign(d0.bias.begin(), d0.bias.end());
        c.radiance_pre.assign(r0.bias.begin(), r0.bias.end());
        if (model.deformation_enabled)
            accumulate_columns(d0, 0, c.enc_tx, c.deform_pre);
        accumulate_columns(r0, F, c.enc_dir, c.radiance_pre);
        return c;
    }

    double evaluate_signal(const FieldModel &model, const RayConditioning &cond, SampleState &state)
    {
        const int F = model.feature_dim();
        const int H = model.hidden_width();

        state.feature.resize(F);
        model.feature.gather(state.stencil, state.feature);

        if (model.deformation_enabled)
        {
            const Vec3 xn = model.normalise(state.position);
            const double xa[3] = {xn.x, xn.y, xn.z};
            state.enc_x.resize(model.enc_pos.width(3));
            model.enc_pos.encode(xa, state.enc_x);

            const DenseLayer &d0 = model.deform.layers[0];
            const DenseLayer &d1 = model.deform.layers[1];
            state.deform_hidden.assign(cond.deform_pre.begin(), cond.deform_pre.end());
            accumulate_columns(d0, int(cond.enc_tx.size()), state.enc_x, state.deform_hidden);
            for (double &h : state.deform_hidden)
                h = h > 0.0 ? h : 0.0;
            for (int c = 0; c < F; ++c)
                state.feature[c] += d1.bias[c];
            accumulate_columns(d1, 0, state.deform_hidden, state.feature);
        }

        const DenseLayer &r0 = model.radiance.layers[0];
        const DenseLayer &r1 = model.radiance.layers[1];
        state.radiance_hidden.assign(cond.radiance_pre.begin(), cond.radiance_pre.end());
        accumulate_columns(r0, 0, state.feature, state.radiance_hidden);
        for (double &v : state.radiance_hidden)
            v = v > 0.0 ? v : 0.0;
        const double z = r1.bias[0] + dot(r1.weight.data(), state.radiance_hidden.data(), std::size_t(H));
        state.signal = sigmoid(z);
        return state.signal;
    }

    double query_signal(const FieldModel &model, const Vec3 &x, const Vec3 &tx, const Vec3 &dir)
    {
        const RayConditioning cond = condition_ray(model, tx, dir);
        SampleState s;
        evaluate_density(model, x, s);
        return evaluate_signal(model, cond, s);
    }

    void reset_scratch(const FieldModel &model, RayGradScratch &scratch)
    {
        const int H = model.hidden_width();
        scratch.deform_delta_sum.assign(H, 0.0);
        scratch.radiance_delta_sum.assign(H, 0.0);
        scratch.d_hidden.assign(H, 0.0);
        scratch.d_deform_hidden.assign(H, 0.0);
        scratch.d_feature.assign(model.feature_dim(), 0.0);
    }

    void backward_sample(const FieldModel &model, const SampleState &state, double d_sigma, double d_signal,
                         GradientSet &grads, RayGradScratch &scratch)
    {
        using G = GradientSet;
        if (grads.buffers.size() != std::size_t(G::count))
            throw ContractError("gradient set does not match the model layout");

        if (d_sigma != 0.0)
        {
            const double d_raw = d_sigma * sigmoid(state.raw_density + model.density_bias);
            const double up[1] = {d_raw};
            scatter(state.stencil, 1, up, grads.buffers[G::density_grid]);
        }
        if (d_signal == 0.0)
            return;

        const int F = model.feature_dim();
        const int H = model.hidden_width();
        const DenseLayer &r0 = model.radiance.layers[0];
        const DenseLayer &r1 = model.radiance.layers[1];

        const double dz = d_signal * state.signal * (1.0 - state.signal);
        grads.buffers[G::radiance_b1][0] += dz;
        axpy(dz, state.radiance_hidden.data(), grads.buffers[G::radiance_w1].data(), std::size_t(H));
        auto &dh = scratch.d_hidden;
        for (int h = 0; h < H; ++h)
            dh[h] = state.radiance_hidden[h] > 0.0 ? dz * double(r1.weight[h]) : 0.0;

        auto &gw0 = grads.buffers[G::radiance_w0];
        axpy(1.0, dh.data(), grads.buffers[G::radiance_b0].data(), std::size_t(H));
        axpy(1.0, dh.data(), scratch.radiance_delta_sum.data(), std::size_t(H));
        auto &df = scratch.d_feature;
        for (int c = 0; c < F; ++c)
        {
            axpy(state.feature[c], dh.data(), gw0.data() + std::size_t(c) * H, std::size_t(H));
            df[c] = dot(r0.weight.data() + std::size_t(c) * H, dh.data(), std::size_t(H));
        }

        scatter(state.stencil, F, df, grads.buffers[G::feature_grid]);

        if (!model.deformation_enabled)
            return;

        const DenseLayer &d1 = model.deform.layers[1];
        auto &gdw1 = grads.buffers[G::deform_w1];
        axpy(1.0, df.data(), grads.buffers[G::deform_b1].data(), std::size_t(F));
        auto &ddh = scratch.d_deform_hidden;
        for (int h = 0; h < H; ++h)
        {
            const double a = state.deform_hidden[h];
            if (a <= 0.0)
            {
                ddh[h] = 0.0;
                continue;
            }
            axpy(a, df.data(), gdw1.data() + std::size_t(h) * F, std::size_t(F));
            ddh[h] = dot(d1.weight.data() + std::size_t(h) * F, df.data(), std::size_t(F));
        }

        auto &gdw0 = grads.buffers[G::deform_w0];
        axpy(1.0, ddh.data(), grads.buffers[G::deform_b0].data(), std::size_t(H));
        axpy(1.0, ddh.data(), scratch.deform_delta_sum.data(), std::size_t(H));
        const std::size_t tx_w = std::size_t(model.enc_pos.width(3));
        for (std::size_t k = 0; k < state.enc_x.size(); ++k)
            axpy(state.enc_x[k], ddh.data(), gdw0.data() + (tx_w + k) * H, std::size_t(H));
    }

    void flush_ray(const FieldModel &model, const RayConditioning &cond, RayGradScratch &scratch, GradientSet &grads)
    {
        using G = GradientSet;
        const std::size_t H = std::size_t(model.hidden_width());
        const std::size_t F = std::size_t(model.feature_dim());
        auto &gw0 = grads.buffers[G::radiance_w0];
        for (std::size_t k = 0; k < cond.enc_dir.size(); ++k)
            axpy(cond.enc_dir[k], scratch.radiance_delta_sum.data(), gw0.data() + (F + k) * H, H);
        if (model.deformation_enabled)
        {
            auto &gdw0 = grads.buffers[G::deform_w0];
            for (std::size_t k = 0; k < cond.enc_tx.size(); ++k)
                axpy(cond.enc_tx[k], scratch.deform_delta_sum.data(), gdw0.data() + k * H, H);
        }
        std::fill(scratch.radiance_delta_sum.begin(), scratch.radiance_delta_sum.end(), 0.0);
        std::fill(scratch.deform_delta_sum.begin(), scratch.deform_delta_sum.end(), 0.0);
    }

    void model_backward(const FieldModel &model, const Vec3 &x, const Vec3 &tx, const Vec3 &dir,
                        double d_sigma, double d_signal, GradientSet &grads)
    {
        if (!grads.congruent_with(model))
            throw ContractError("gradient set shape does not match the model");
        if (!std::isfinite(d_sigma) || !std::isfinite(d_signal))
            throw ContractError("non-finite upstream gradient");
        const RayConditioning cond = condition_ray(model, tx, dir);
        SampleState s;
        evaluate_density(model, x, s);
        evaluate_signal(model, cond, s);
        RayGradScratch scratch;
        reset_scratch(model, scratch);
        backward_sample(model, s, d_sigma, d_signal, grads, scratch);
        flush_ray(model, cond, scratch, grads);
    }
}
