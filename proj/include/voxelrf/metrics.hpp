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

#include "voxelrf/renderer.hpp"

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace voxelrf
{
    // Standard SSIM settings: 11x11 Gaussian window (std 1.5), K1 = 0.01, K2 = 0.03,
    // symmetric (half-sample) boundary padding.
    struct SsimConfig
    {
        int window = 11;
        double sigma = 1.5;
        double data_range = 1.0;
        double k1 = 0.01;
        double k2 = 0.03;

        double c1() const { return (k1 * data_range) * (k1 * data_range); }
        double c2() const { return (k2 * data_range) * (k2 * data_range); }
    };

    // Normalised 2-D Gaussian window, row-major window x window.
    std::vector<double> gaussian_window(const SsimConfig &cfg);

    // Mean of the local SSIM map. Throws ContractError on a resolution mismatch.
    double ssim(const SpatialSpectrum &a, const SpatialSpectrum &b, const SsimConfig &cfg = {});

    // Linear interpolation between closest ranks: position q (n - 1) in the sorted values.
    double percentile(std::span<const double> values, double q);

    struct PercentileSummary
    {
        double p25 = 0.0;
        double median = 0.0;
        double p75 = 0.0;
        std::vector<std::pair<double, double>> cdf; // (value, fraction <= value), sorted by value
    };

    PercentileSummary percentile_summary(std::span<const double> values);

    struct RssiErrorReport
    {
        std::vector<double> errors;
        PercentileSummary summary;
    };

    RssiErrorReport rssi_error(std::span<const double> predicted_db, std::span<const double> measured_db);

    // Two-column CSV with a header line.
    std::string format_csv(const std::string &index_name, const std::string &value_name,
                           std::span<const std::size_t> indices, std::span<const double> values);
    std::string format_cdf_csv(const PercentileSummary &summary, const std::string &value_name);
}
