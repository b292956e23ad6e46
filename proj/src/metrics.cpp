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

#include "voxelrf/metrics.hpp"

#include <algorithm>
#include <cstdio>

namespace voxelrf
{
    namespace
    {
        // Half-sample symmetric reflection (a b c | c b a), repeated for windows wider than the image.
        int reflect(int i, int n)
        {
            const int period = 2 * n;
            i %= period;
            if (i < 0)
                i += period;
            return i < n ? i : period - 1 - i;
        }
    }

    std::vector<double> gaussian_window(const SsimConfig &cfg)
    {
        if (cfg.window < 1 || cfg.window % 2 == 0)
            throw ContractError("SSIM window must be a positive odd size");
        const int half = cfg.window / 2;
        std::vector<double> g1(cfg.window);
        double s = 0.0;
        for (int i = 0; i < cfg.window; ++i)
        {
            const double d = i - half;
            g1[i] = std::exp(-d * d / (2.0 * cfg.sigma * cfg.sigma));
            s += g1[i];
        }
        for (double &v : g1)
            v /= s;
        std::vector<double> w(std::size_t(cfg.window) * cfg.window);
        for (int i = 0; i < cfg.window; ++i)
            for (int j = 0; j < cfg.window; ++j)
                w[std::size_t(i) * cfg.window + j] = g1[i] * g1[j];
        return w;
    }

    double ssim(const SpatialSpectrum &a, const SpatialSpectrum &b, const SsimConfig &cfg)
    {
        if (!(a.res == b.res) || a.values.size() != b.values.size())
            throw ContractError("ssim: spectra have different resolutions");
        const int rows = a.res.azimuth, cols = a.res.elevation;
        if (rows < 1 || cols < 1)
            throw ContractError("ssim: empty spectrum");
        const auto w = gaussian_window(cfg);
        const int half = cfg.window / 2;
        const double c1 = cfg.c1(), c2 = cfg.c2();

        double total = 0.0;
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c)
            {
                double mx = 0, my = 0, sxx = 0, syy = 0, sxy = 0;
                for (int i = -half; i <= half; ++i)
                {
                    const int rr = reflect(r + i, rows);
                    for (int j = -half; j <= half; ++j)
                    {
                        const int cc = reflect(c + j, cols);
                        const double wt = w[std::size_t(i + half) * cfg.window + (j + half)];
                        const double x = a.at(rr, cc), y = b.at(rr, cc);
                        mx += wt * x;
                        my += wt * y;
                        sxx += wt * x * x;
                        syy += wt * y * y;
                        sxy += wt * x * y;
                    }
                }
                const double vx = sxx - mx * mx;
                const double vy = syy - my * my;
                const double cov = sxy - mx * my;
                total += ((2.0 * mx * my + c1) * (2.0 * cov + c2)) / ((mx * mx + my * my + c1) * (vx + vy + c2));
            }
        return total / (double(rows) * cols);
    }

    double percentile(std::span<const double> values, double q)
    {
        if (values.empty())
            throw ContractError("percentile of an empty list");
        if (!(q >= 0.0 && q <= 1.0))
            throw ContractError("percentile fraction must lie in [0, 1]");
        std::vector<double> s(values.begin(), values.end());
        std::sort(s.begin(), s.end());
        const double pos = q * double(s.size() - 1);
        const auto lo = static_cast<std::size_t>(std::floor(pos));
        const std::size_t hi = std::min(lo + 1, s.size() - 1);
        const double f = pos - double(lo);
        return f == 0.0 ? s[lo] : s[lo] + f * (s[hi] - s[lo]);
    }

    PercentileSummary percentile_summary(std::span<const double> values)
    {
        if (values.empty())
            throw ContractError("percentile summary of an empty list");
        PercentileSummary out;
        out.p25 = percentile(values, 0.25);
        out.median = percentile(values, 0.5);
        out.p75 = percentile(values, 0.75);
        std::vector<double> s(values.begin(), values.end());
        std::sort(s.begin(), s.end());
        const double n = double(s.size());
        for (std::size_t i = 0; i < s.size(); ++i)
        {
            // Ties collapse onto their last occurrence so the fraction is "<= value".
            if (i + 1 < s.size() && s[i + 1] == s[i])
                continue;
            out.cdf.emplace_back(s[i], double(i + 1) / n);
        }
        return out;
    }

    RssiErrorReport rssi_error(std::span<const double> predicted_db, std::span<const double> measured_db)
    {
        if (predicted_db.size() != measured_db.size())
            throw ContractError("rssi_error: list lengths differ");
        RssiErrorReport out;
        out.errors.resize(predicted_db.size());
        for (std::size_t i = 0; i < predicted_db.size(); ++i)
            out.errors[i] = std::abs(predicted_db[i] - measured_db[i]);
        if (!out.errors.empty())
            out.summary = percentile_summary(out.errors);
        return out;
    }

    std::string format_csv(const std::string &index_name, const std::string &value_name,
                           std::span<const std::size_t> indices, std::span<const double> values)
    {
        if (indices.size() != values.size())
            throw ContractError("format_csv: column lengths differ");
        std::string out = index_name + "," + value_name + "\n";
        char buf[64];
        for (std::size_t i = 0; i < values.size(); ++i)
        {
            std::snprintf(buf, sizeof buf, "%zu,%.9g\n", indices[i], values[i]);
            out += buf;
        }
        return out;
    }

    std::string format_cdf_csv(const PercentileSummary &summary, const std::string &value_name)
    {
        std::string out = value_name + ",cdf\n";
        char buf[64];
        for (const auto &[v, f] : summary.cdf)
        {
            std::snprintf(buf, sizeof buf, "%.9g,%.9g\n", v, f);
            out += buf;
        }
        return out;
    }
}
