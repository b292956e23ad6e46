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

#include "voxelrf/objectives.hpp"

#include "voxelrf/common.hpp"

#include <algorithm>
#include <cmath>

namespace voxelrf
{
    LossGradient spectrum_mse(std::span<const double> predicted, std::span<const double> target)
    {
        if (predicted.empty())
            throw ContractError("spectrum_mse needs a non-empty batch");
        if (predicted.size() != target.size())
            throw ContractError("spectrum_mse: prediction and target lengths differ");
        const double B = double(predicted.size());
        LossGradient out;
        out.gradient.resize(predicted.size());
        double sum = 0.0;
        for (std::size_t i = 0; i < predicted.size(); ++i)
        {
            const double r = predicted[i] - target[i];
            sum += r * r;
            out.gradient[i] = 2.0 * r / B;
        }
        out.loss = sum / B;
        return out;
    }

    LossGradient background_entropy(std::span<const double> final_transmittance)
    {
        LossGradient out;
        out.gradient.assign(final_transmittance.size(), 0.0);
        double sum = 0.0;
        for (std::size_t i = 0; i < final_transmittance.size(); ++i)
        {
            const double raw = final_transmittance[i];
            const double t = std::clamp(raw, kEntropyClamp, 1.0 - kEntropyClamp);
            sum -= t * std::log(t) + (1.0 - t) * std::log1p(-t);
            if (raw > kEntropyClamp && raw < 1.0 - kEntropyClamp)
                out.gradient[i] = -std::log(t / (1.0 - t));
        }
        out.loss = sum;
        return out;
    }

    double total_loss(double spectrum_loss, double bg_loss, double lambda_bg)
    {
        if (lambda_bg < 0.0)
            throw ContractError("lambda_bg must be >= 0");
        return spectrum_loss + lambda_bg * bg_loss;
    }
}
