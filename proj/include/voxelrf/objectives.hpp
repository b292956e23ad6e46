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

#include <span>
#include <vector>

namespace voxelrf
{
    struct LossReport
    {
        double spectrum_loss = 0.0;
        double bg_loss = 0.0;
        double total = 0.0;
        int ray_count = 0;
    };

    struct LossGradient
    {
        double loss = 0.0;
        std::vector<double> gradient; // per ray
    };

    // Mean of squared residuals over the batch, gradient 2 (pred - target) / B.
    LossGradient spectrum_mse(std::span<const double> predicted, std::span<const double> target);

    inline constexpr double kEntropyClamp = 1e-6;

    // Summed binary entropy of the final transmittances (natural log). Values are clamped to
    // [eps, 1 - eps]; clamped rays get a zero gradient.
    LossGradient background_entropy(std::span<const double> final_transmittance);

    inline constexpr double kDefaultLambdaBg = 1e-4;

    double total_loss(double spectrum_loss, double bg_loss, double lambda_bg = kDefaultLambdaBg);
}
