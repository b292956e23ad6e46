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

#pragma once

#include "voxelrf/voxel_grid.hpp"

#include <span>
#include <string>
#include <vector>

namespace voxelrf
{
    // Per-component (sin(2^l pi p), cos(2^l pi p)) for l = 0..levels-1. Raw inputs are not appended.
    struct PositionalEncoding
    {
        int levels = 1;

        int width(int input_width) const { return 2 * levels * input_width; }
        void encode(std::span<const double> input, std::span<double> out) const;
    };

    std::vector<double> positional_encode(std::span<const double> input, const PositionalEncoding &cfg);

    enum class Activation
    {
        none,
        relu,
        sigmoid
    };

    struct DenseLayer
    {
        int in = 0;
        int out = 0;
        std::vector<float> weight; // input-major: W(r, k) at k * out + r
        std::vector<float> bias;   // out

        float at(int r, int k) const { return weight[std::size_t(k) * out + r]; }
        float &at(int r, int k) { return weight[std::size_t(k) * out + r]; }
    };

    struct Mlp
    {
        std::vector<DenseLayer> layers;
        Activation hidden_activation = Activation::relu;
        Activation output_activation = Activation::none;

        int input_width() const { return layers.empty() ? 0 : layers.front().in; }
        int output_width() const { return layers.empty() ? 0 : layers.back().out; }

        // Plain layer-by-layer evaluation. The field model uses a specialised path; this one is
        // the reference it is tested against.
        std::vector<double> forward(std::span<const double> input) const;
    };

    // Glorot-uniform weights, zero biases.
    Mlp make_mlp(const std::vector<int> &widths, Activation hidden, Activation output, Rng &rng);

    struct ModelShape
    {
        GridDims dims{32, 32, 32};
        Aabb bbox{{-1, -1, -1}, {1, 1, 1}};
        int feature_dim = 8;
        int hidden_width = 64;
        int position_levels = 5;
        int direction_levels = 4;
        double density_bias = -3.0;
        bool deformation = true;
    };

    // A named view of one learnable tensor.
    struct TensorView
    {
        std::string name;
        std::vector<std::uint32_t> shape;
        std::span<float> data;
        bool is_grid = false;
    };

    struct ConstTensorView
    {
        std::string name;
        std::vector<std::uint32_t> shape;
        std::span<const float> data;
        bool is_grid = false;
    };

    // Density grid (raw, pre-softplus), feature grid, deformation network and radiance network.
    //
    // Deformation input:  enc(tx) ++ enc(x), both normalised to [-1,1] over the bbox.
    // Radiance input:     (Feat(x) + dFeat) ++ enc(dir).
    struct FieldModel
    {
        VoxelGrid density;
        VoxelGrid feature;
        Mlp deform;
        Mlp radiance;
        PositionalEncoding enc_pos{5};
        PositionalEncoding enc_dir{4};
        double density_bias = -3.0;
        bool deformation_enabled = true;

        const Aabb &bbox() const { return density.bbox(); }
        const GridDims &dims() const { return density.dims(); }
        int feature_dim() const { return feature.channels(); }
        int hidden_width() const { return radiance.layers.front().out; }

        // Maps a position to [-1,1]^3 over the bbox (unclamped, so a Tx outside the box maps outside).
        Vec3 normalise(const Vec3 &p) const;

        // Tensor order is fixed: density_grid, feature_grid, deform.{0,1}.{weight,bias},
        // radiance.{0,1}.{weight,bias}. Checkpoints and optimizer state follow it.
        std::vector<TensorView> tensors();
        std::vector<ConstTensorView> tensors() const;

        // Throws ContractError when network widths do not chain with the grids and encodings.
        void validate() const;
    };

    FieldModel init_model(const ModelShape &shape, std::uint64_t seed);

    // One double-precision buffer per tensor of a FieldModel, in FieldModel::tensors() order.
    struct GradientSet
    {
        std::vector<std::vector<double>> buffers;

        static GradientSet zeros_like(const FieldModel &model);
        void zero();
        bool congruent_with(const FieldModel &model) const;
        void add(const GradientSet &other);

        enum Index : int
        {
            density_grid = 0,
            feature_grid,
            deform_w0,
            deform_b0,
            deform_w1,
            deform_b1,
            radiance_w0,
            radiance_b0,
            radiance_w1,
            radiance_b1,
            count
        };
    };

    double query_density(const FieldModel &model, const Vec3 &x);

    double query_signal(const FieldModel &model, const Vec3 &x, const Vec3 &tx, const Vec3 &dir);

    // Everything about a ray that does not depend on the sample position: encodings of tx and dir
    // and their first-layer contributions.
    struct RayConditioning
    {
        Vec3 tx;
        Vec3 dir;
        std::vector<double> enc_tx;
        std::vector<double> enc_dir;
        std::vector<double> deform_pre;   // W0[:, tx cols] enc_tx + b0
        std::vector<double> radiance_pre; // W0[:, dir cols] enc_dir + b0
    };

    // dir is the emission direction (sample toward receiver); must be unit length within 1e-6.
    RayConditioning condition_ray(const FieldModel &model, const Vec3 &tx, const Vec3 &dir);

    // Forward intermediates of one sample, kept for the backward pass.
    struct SampleState
    {
        Vec3 position;
        TrilinearStencil stencil;
        double raw_density = 0.0; // interpolated, before bias
        double sigma = 0.0;
        double signal = 0.0;
        std::vector<double> enc_x;
        std::vector<double> deform_hidden;
        std::vector<double> feature; // Feat + dFeat
        std::vector<double> radiance_hidden;
    };

    // Fills stencil/raw_density/sigma.
    void evaluate_density(const FieldModel &model, const Vec3 &x, SampleState &state);

    // Requires evaluate_density on the same state first; fills the signal intermediates.
    double evaluate_signal(const FieldModel &model, const RayConditioning &cond, SampleState &state);

    // Per-ray partial sums for the tx/dir first-layer columns, flushed once per ray.
    struct RayGradScratch
    {
        std::vector<double> deform_delta_sum;
        std::vector<double> radiance_delta_sum;
        std::vector<double> d_hidden;
        std::vector<double> d_feature;
        std::vector<double> d_deform_hidden;
    };

    void reset_scratch(const FieldModel &model, RayGradScratch &scratch);

    // Accumulates the parameter gradients of one sample given upstream dL/dsigma and dL/dS.
    // d_signal is ignored (and the signal state may be absent) when it is exactly zero.
    void backward_sample(const FieldModel &model, const SampleState &state, double d_sigma, double d_signal,
                         GradientSet &grads, RayGradScratch &scratch);

    // Applies the accumulated tx/dir column sums as outer products.
    void flush_ray(const FieldModel &model, const RayConditioning &cond, RayGradScratch &scratch, GradientSet &grads);

    // Single-sample adjoint of query_density/query_signal.
    void model_backward(const FieldModel &model, const Vec3 &x, const Vec3 &tx, const Vec3 &dir,
                        double d_sigma, double d_signal, GradientSet &grads);
}
