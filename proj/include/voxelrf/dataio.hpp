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

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace voxelrf
{
    // ---- Spectrum files -------------------------------------------------------------------
    //
    // "VXRF" | version u32 | M u32 | N u32 | M*N float32, all little-endian, azimuth-major.

    inline constexpr std::uint32_t kSpectrumVersion = 1;
    inline constexpr std::size_t kSpectrumHeaderBytes = 16;

    std::vector<std::uint8_t> encode_spectrum(const SpatialSpectrum &spectrum);
    SpatialSpectrum decode_spectrum(std::span<const std::uint8_t> bytes);

    void write_spectrum(const std::filesystem::path &path, const SpatialSpectrum &spectrum);
    SpatialSpectrum read_spectrum(const std::filesystem::path &path);

    // ---- Synthetic scenes and the analytic oracle -----------------------------------------

    struct Blob
    {
        Vec3 center;
        double radius = 0.1;
        double peak_density = 0.0;
        double emission = 0.5;
    };

    struct SyntheticScene
    {
        Aabb bbox;
        Vec3 rx;
        std::vector<Blob> blobs;
        double tx_modulation = 0.0;

        void validate() const;
    };

    // Three blobs above a receiver near the floor of a 2 m cube.
    SyntheticScene demo_scene(double tx_modulation = 0.5);

    struct FieldSample
    {
        double sigma = 0.0;
        double signal = 0.0;
    };

    // sigma(x) = sum_b peak_b g_b(x), g_b = exp(-|x - c_b|^2 / (2 r_b^2))
    // S = clamp(sum_b emission_b g_b(x) (1 + m cos(pi <unit(tx - c_b), dir>)) / (1 + m), 1e-6, 1 - 1e-6)
    FieldSample oracle_density_emission(const SyntheticScene &scene, const Vec3 &x, const Vec3 &tx, const Vec3 &dir);

    struct OracleRay
    {
        double radiance = 0.0;
        double final_transmittance = 1.0;
    };

    // Compositing with every T_i recomputed as the full product over j < i (quadratic, no recurrence).
    OracleRay oracle_composite(std::span<const double> sigma, std::span<const double> signal, std::span<const double> spacing);

    // Unrounded per-cell radiance of the analytic field, azimuth-major.
    std::vector<double> oracle_render_raw(const SyntheticScene &scene, const SceneGeometry &geometry, const Vec3 &tx, double fine_step);
    SpatialSpectrum oracle_render(const SyntheticScene &scene, const SceneGeometry &geometry, const Vec3 &tx, double fine_step);

    // ---- Datasets -------------------------------------------------------------------------

    struct Record
    {
        Vec3 tx;
        std::string spectrum_path; // relative to the dataset directory
        SpatialSpectrum spectrum;
        std::optional<double> rssi_dbm;
    };

    struct Dataset
    {
        SceneGeometry geometry;
        double normalization = 1.0; // raw power that maps to 1.0
        std::string units = "linear_power";
        nlohmann::json generator;   // provenance of synthetic data; may be null
        std::vector<Record> records;
    };

    struct GenerateOptions
    {
        int n_tx = 128;
        std::uint64_t seed = 0;
        double fine_step = 0.0;            // <= 0: a sixteenth-voxel of reference_dims
        GridDims reference_dims{32, 32, 32};
        double rssi_noise_db = 1.0;        // std of Gaussian noise added to the oracle RSSI
        double rssi_reference_dbm = -40.0; // offset of the raw (unnormalised) power sum
    };

    // Samples tx uniformly in the bbox, renders each with the oracle, normalises by the global
    // maximum, and writes spectra plus manifest.json under out_dir.
    Dataset generate_dataset(const SyntheticScene &scene, SpectrumResolution res, const GenerateOptions &options,
                             const std::filesystem::path &out_dir);

    inline constexpr const char *kManifestName = "manifest.json";

    nlohmann::json manifest_to_json(const Dataset &dataset);
    void write_manifest(const std::filesystem::path &dir, const Dataset &dataset);

    // Reads manifest.json and every spectrum it lists.
    Dataset load_dataset(const std::filesystem::path &dir);

    struct Split
    {
        std::vector<std::size_t> train;
        std::vector<std::size_t> test;
    };

    // Seeded shuffle of record indices; the first round(train_fraction * n) go to train.
    Split split_records(std::size_t n, std::uint64_t seed, double train_fraction = 0.8);

    // ---- Checkpoints ----------------------------------------------------------------------
    //
    // "VXCK" | version u32 | metadata length u32 | metadata JSON (UTF-8) | tensor count u32 |
    // per tensor: name length u32, name, rank u32, dims u32[rank], float32 payload.

    inline constexpr std::uint32_t kCheckpointVersion = 1;

    struct CheckpointMeta
    {
        std::uint64_t seed = 0;
        std::int64_t iteration = 0;
        nlohmann::json config;  // echo of the run configuration
        SceneGeometry geometry; // the receiver/spectrum layout the model was trained for
    };

    std::vector<std::uint8_t> encode_checkpoint(const FieldModel &model, const CheckpointMeta &meta);
    FieldModel decode_checkpoint(std::span<const std::uint8_t> bytes, CheckpointMeta *meta = nullptr);

    // Written to a temporary sibling and renamed into place.
    void save_checkpoint(const std::filesystem::path &path, const FieldModel &model, const CheckpointMeta &meta);
    FieldModel load_checkpoint(const std::filesystem::path &path, CheckpointMeta *meta = nullptr);

    // ---- Small file helpers ---------------------------------------------------------------

    std::vector<std::uint8_t> read_file(const std::filesystem::path &path);
    void write_file_atomic(const std::filesystem::path &path, std::span<const std::uint8_t> bytes);
    void write_text_atomic(const std::filesystem::path &path, const std::string &text);

    nlohmann::json to_json(const Vec3 &v);
    Vec3 vec3_from_json(const nlohmann::json &j, const std::string &what);
}
