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

// Shared test fixtures: small in-memory synthetic datasets and scratch directories.
#pragma once

#include "voxelrf/dataio.hpp"

#include <filesystem>
#include <string>

namespace voxelrf::testing
{
    inline SyntheticScene two_blob_scene(double modulation = 0.5)
    {
        SyntheticScene s;
        s.bbox = Aabb{{-1, -1, -1}, {1, 1, 1}};
        s.rx = {0.0, 0.0, -0.85};
        s.blobs = {Blob{{0.5, 0.3, 0.1}, 0.25, 20.0, 0.8}, Blob{{-0.4, -0.4, 0.4}, 0.25, 25.0, 0.6}};
        s.tx_modulation = modulation;
        return s;
    }

    // Oracle-rendered, max-normalised records without touching the filesystem.
    inline Dataset memory_dataset(const SyntheticScene &scene, int n_tx, std::uint64_t seed,
                                  SpectrumResolution res = {36, 9}, double fine_step = 0.02)
    {
        Dataset ds;
        ds.geometry = {scene.rx, scene.bbox, res};
        Rng rng(seed);
        std::vector<std::vector<double>> raw;
        double peak = 0.0;
        for (int i = 0; i < n_tx; ++i)
        {
            Record rec;
            for (int a = 0; a < 3; ++a)
                rec.tx[a] = rng.uniform(scene.bbox.min_corner[a], scene.bbox.max_corner[a]);
            raw.push_back(oracle_render_raw(scene, ds.geometry, rec.tx, fine_step));
            for (double v : raw.back())
                peak = std::max(peak, v);
            ds.records.push_back(std::move(rec));
        }
        ds.normalization = peak;
        for (std::size_t i = 0; i < raw.size(); ++i)
        {
            ds.records[i].spectrum = SpatialSpectrum(res);
            for (std::size_t c = 0; c < raw[i].size(); ++c)
                ds.records[i].spectrum.values[c] = static_cast<float>(raw[i][c] / peak);
        }
        return ds;
    }

    // A fresh directory under the system temp dir, removed on destruction.
    class ScratchDir
    {
    public:
        explicit ScratchDir(const std::string &tag)
        {
            Rng rng(std::hash<std::string>{}(tag) ^ std::uint64_t(std::filesystem::file_time_type::clock::now()
                                                                        .time_since_epoch()
                                                                        .count()));
            path_ = std::filesystem::temp_directory_path() / ("voxelrf-" + tag + "-" + std::to_string(rng.below(1u << 30)));
            std::filesystem::remove_all(path_);
            std::filesystem::create_directories(path_);
        }
        ~ScratchDir()
        {
            std::error_code ec;
            std::filesystem::remove_all(path_, ec);
        }
        ScratchDir(const ScratchDir &) = delete;
        ScratchDir &operator=(const ScratchDir &) = delete;

        const std::filesystem::path &path() const { return path_; }

    private:
        std::filesystem::path path_;
    };
}
