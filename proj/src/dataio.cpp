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

#include "voxelrf/dataio.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <numeric>
#include <sstream>

namespace voxelrf
{
    static_assert(std::endian::native == std::endian::little, "binary formats assume a little-endian host");

    namespace fs = std::filesystem;
    using nlohmann::json;

    namespace
    {
        class Writer
        {
        public:
            void u32(std::uint32_t v) { raw(&v, 4); }
            void f32(float v) { raw(&v, 4); }
            void bytes(std::string_view s) { raw(s.data(), s.size()); }
            void floats(std::span<const float> v) { raw(v.data(), v.size() * 4); }
            std::vector<std::uint8_t> take() { return std::move(buf_); }

        private:
            void raw(const void *p, std::size_t n)
            {
                const auto *b = static_cast<const std::uint8_t *>(p);
                buf_.insert(buf_.end(), b, b + n);
            }
            std::vector<std::uint8_t> buf_;
        };

        class Reader
        {
        public:
            Reader(std::span<const std::uint8_t> bytes, std::string what) : bytes_(bytes), what_(std::move(what)) {}

            std::uint32_t u32()
            {
                std::uint32_t v;
                raw(&v, 4, "u32");
                return v;
            }
            std::string str(std::size_t n)
            {
                need(n, "string");
                std::string s(reinterpret_cast<const char *>(bytes_.data() + pos_), n);
                pos_ += n;
                return s;
            }
            void floats(std::span<float> out) { raw(out.data(), out.size() * 4, "float32 payload"); }
            std::size_t offset() const { return pos_; }
            std::size_t remaining() const { return bytes_.size() - pos_; }

            [[noreturn]] void fail(const std::string &msg) const
            {
                throw FormatError(what_ + ": " + msg + " at byte offset " + std::to_string(pos_));
            }

        private:
            void need(std::size_t n, const char *field) const
            {
                if (remaining() < n)
                    fail(std::string("truncated ") + field + " (need " + std::to_string(n) + " bytes, have " +
                         std::to_string(remaining()) + ")");
            }
            void raw(void *p, std::size_t n, const char *field)
            {
                need(n, field);
                std::memcpy(p, bytes_.data() + pos_, n);
                pos_ += n;
            }

            std::span<const std::uint8_t> bytes_;
            std::string what_;
            std::size_t pos_ = 0;
        };

        json bbox_json(const Aabb &b) { return {{"min", to_json(b.min_corner)}, {"max", to_json(b.max_corner)}}; }

        Aabb bbox_from_json(const json &j)
        {
            Aabb b{vec3_from_json(j.at("min"), "bbox.min"), vec3_from_json(j.at("max"), "bbox.max")};
            b.validate();
            return b;
        }

        json geometry_json(const SceneGeometry &g)
        {
            return {{"rx_position", to_json(g.rx)},
                    {"bbox", bbox_json(g.bbox)},
                    {"spectrum_res", {g.res.azimuth, g.res.elevation}}};
        }

        SceneGeometry geometry_from_json(const json &j)
        {
            SceneGeometry g;
            g.rx = vec3_from_json(j.at("rx_position"), "rx_position");
            g.bbox = bbox_from_json(j.at("bbox"));
            const json &res = j.at("spectrum_res");
            if (!res.is_array() || res.size() != 2)
                throw FormatError("spectrum_res must be [M, N]");
            g.res = {res[0].get<int>(), res[1].get<int>()};
            g.validate();
            return g;
        }

        std::string shape_string(const std::vector<std::uint32_t> &s)
        {
            std::string out = "[";
            for (std::size_t i = 0; i < s.size(); ++i)
                out += (i ? "," : "") + std::to_string(s[i]);
            return out + "]";
        }
    }

    json to_json(const Vec3 &v) { return json::array({v.x, v.y, v.z}); }

    Vec3 vec3_from_json(const json &j, const std::string &what)
    {
        if (!j.is_array() || j.size() != 3)
            throw FormatError(what + " must be an array of 3 numbers");
        for (const auto &e : j)
            if (!e.is_number())
                throw FormatError(what + " must be an array of 3 numbers");
        return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
    }

    // ---- files ----------------------------------------------------------------------------

    std::vector<std::uint8_t> read_file(const fs::path &path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw IoError("cannot open " + path.string());
        std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        if (in.bad())
            throw IoError("read failed for " + path.string());
        return bytes;
    }

    void write_file_atomic(const fs::path &path, std::span<const std::uint8_t> bytes)
    {
        fs::path tmp = path;
        tmp += ".tmp";
        {
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            if (!out)
                throw IoError("cannot open " + tmp.string() + " for writing");
            out.write(reinterpret_cast<const char *>(bytes.data()), std::streamsize(bytes.size()));
            out.flush();
            if (!out)
                throw IoError("write failed for " + tmp.string());
        }
        std::error_code ec;
        fs::rename(tmp, path, ec);
        if (ec)
            throw IoError("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
    }

    void write_text_atomic(const fs::path &path, const std::string &text)
    {
        write_file_atomic(path, std::span(reinterpret_cast<const std::uint8_t *>(text.data()), text.size()));
    }

    // ---- spectra --------------------------------------------------------------------------

    std::vector<std::uint8_t> encode_spectrum(const SpatialSpectrum &s)
    {
        if (s.res.azimuth < 1 || s.res.elevation < 1 || s.values.size() != std::size_t(s.res.cells()))
            throw ContractError("spectrum shape is inconsistent");
        for (float v : s.values)
            if (!std::isfinite(v) || v < 0.0f)
                throw ContractError("spectrum values must be finite and non-negative");
        Writer w;
        w.bytes("VXRF");
        w.u32(kSpectrumVersion);
        w.u32(std::uint32_t(s.res.azimuth));
        w.u32(std::uint32_t(s.res.elevation));
        w.floats(s.values);
        return w.take();
    }

    SpatialSpectrum decode_spectrum(std::span<const std::uint8_t> bytes)
    {
        Reader r(bytes, "spectrum");
        if (r.str(4) != "VXRF")
            throw FormatError("spectrum: bad magic at byte offset 0");
        const std::uint32_t version = r.u32();
        if (version != kSpectrumVersion)
            throw FormatError("spectrum: unsupported version " + std::to_string(version) + " at byte offset 4");
        const std::uint32_t M = r.u32();
        const std::uint32_t N = r.u32();
        if (M == 0 || N == 0)
            r.fail("zero spectrum dimension");
        const std::uint64_t cells = std::uint64_t(M) * N;
        if (cells > (std::uint64_t(1) << 31) / 4)
            r.fail("spectrum dimensions overflow");
        if (r.remaining() != cells * 4)
            r.fail("payload length " + std::to_string(r.remaining()) + " does not match " + std::to_string(M) + "x" +
                   std::to_string(N));
        SpatialSpectrum s({int(M), int(N)});
        r.floats(s.values);
        for (std::size_t i = 0; i < s.values.size(); ++i)
            if (!std::isfinite(s.values[i]) || s.values[i] < 0.0f)
                throw FormatError("spectrum: invalid value at byte offset " + std::to_string(kSpectrumHeaderBytes + 4 * i));
        return s;
    }

    void write_spectrum(const fs::path &path, const SpatialSpectrum &spectrum)
    {
        write_file_atomic(path, encode_spectrum(spectrum));
    }

    SpatialSpectrum read_spectrum(const fs::path &path)
    {
        const auto bytes = read_file(path);
        try
        {
            return decode_spectrum(bytes);
        }
        catch (const FormatError &e)
        {
            throw FormatError(path.string() + ": " + e.what());
        }
    }

    // ---- oracle ---------------------------------------------------------------------------

    void SyntheticScene::validate() const
    {
        bbox.validate();
        if (!bbox.contains(rx))
            throw ContractError("scene receiver lies outside the bbox");
        if (tx_modulation < 0.0)
            throw ContractError("tx_modulation must be >= 0");
        for (const Blob &b : blobs)
        {
            if (!bbox.contains(b.center))
                throw ContractError("blob centre " + to_string(b.center) + " lies outside the bbox");
            if (!(b.radius > 0.0) || b.peak_density < 0.0 || !(b.emission > 0.0 && b.emission < 1.0))
                throw ContractError("blob needs radius > 0, peak_density >= 0 and emission in (0,1)");
        }
    }

    SyntheticScene demo_scene(double tx_modulation)
    {
        SyntheticScene s;
        s.bbox = {{-1.0, -1.0, -1.0}, {1.0, 1.0, 1.0}};
        s.rx = {0.0, 0.0, -0.85};
        s.blobs = {
            {{0.55, 0.25, 0.05}, 0.22, 25.0, 0.85},
            {{-0.45, 0.50, 0.40}, 0.25, 20.0, 0.60},
            {{0.05, -0.55, 0.50}, 0.20, 30.0, 0.75},
        };
        s.tx_modulation = tx_modulation;
        return s;
    }

    FieldSample oracle_density_emission(const SyntheticScene &scene, const Vec3 &x, const Vec3 &tx, const Vec3 &dir)
    {
        FieldSample out;
        double emitted = 0.0;
        const double m = scene.tx_modulation;
        for (const Blob &b : scene.blobs)
        {
            const Vec3 d = x - b.center;
            const double g = std::exp(-d.dot(d) / (2.0 * b.radius * b.radius));
            out.sigma += b.peak_density * g;
            const Vec3 to_tx = tx - b.center;
            const double len = to_tx.norm();
            const double c = len > 0.0 ? to_tx.dot(dir) / len : 0.0;
            emitted += b.emission * g * (1.0 + m * std::cos(M_PI * c)) / (1.0 + m);
        }
        out.signal = std::clamp(emitted, 1e-6, 1.0 - 1e-6);
        return out;
    }

    OracleRay oracle_composite(std::span<const double> sigma, std::span<const double> signal, std::span<const double> spacing)
    {
        const std::size_t K = sigma.size();
        std::vector<double> alpha(K);
        for (std::size_t i = 0; i < K; ++i)
            alpha[i] = 1.0 - std::exp(-sigma[i] * spacing[i]);
        OracleRay out;
        for (std::size_t i = 0; i < K; ++i)
        {
            double T = 1.0;
            for (std::size_t j = 0; j < i; ++j)
                T *= 1.0 - alpha[j];
            out.radiance += T * alpha[i] * signal[i];
        }
        double T = 1.0;
        for (std::size_t j = 0; j < K; ++j)
            T *= 1.0 - alpha[j];
        out.final_transmittance = T;
        return out;
    }

    std::vector<double> oracle_render_raw(const SyntheticScene &scene, const SceneGeometry &geometry, const Vec3 &tx, double fine_step)
    {
        if (!(fine_step > 0.0))
            throw ContractError("oracle step must be positive");
        std::vector<double> out(std::size_t(geometry.res.cells()), 0.0);
        std::vector<double> sigma, signal, spacing;
        for (int m = 0; m < geometry.res.azimuth; ++m)
            for (int n = 0; n < geometry.res.elevation; ++n)
            {
                const Vec3 dir = direction_from_angles(m, n, geometry.res);
                const double t_far = clip_ray(geometry.rx, dir, geometry.bbox).t_far;
                sigma.clear();
                signal.clear();
                spacing.clear();
                for (double t = 0.5 * fine_step; t < t_far; t += fine_step)
                {
                    const FieldSample f = oracle_density_emission(scene, geometry.rx + dir * t, tx, -dir);
                    sigma.push_back(f.sigma);
                    signal.push_back(f.signal);
                    spacing.push_back(fine_step);
                }
                out[std::size_t(m) * geometry.res.elevation + n] = oracle_composite(sigma, signal, spacing).radiance;
            }
        return out;
    }

    SpatialSpectrum oracle_render(const SyntheticScene &scene, const SceneGeometry &geometry, const Vec3 &tx, double fine_step)
    {
        const auto raw = oracle_render_raw(scene, geometry, tx, fine_step);
        SpatialSpectrum s(geometry.res);
        for (std::size_t i = 0; i < raw.size(); ++i)
            s.values[i] = static_cast<float>(raw[i]);
        return s;
    }

    // ---- datasets -------------------------------------------------------------------------

    Dataset generate_dataset(const SyntheticScene &scene, SpectrumResolution res, const GenerateOptions &options,
                             const fs::path &out_dir)
    {
        scene.validate();
        if (options.n_tx < 1)
            throw ContractError("n_tx must be >= 1");
        Dataset ds;
        ds.geometry = {scene.rx, scene.bbox, res};
        ds.geometry.validate();
        const double step = options.fine_step > 0.0 ? options.fine_step
                                                    : default_step(options.reference_dims, scene.bbox) / 4.0;

        Rng rng(options.seed);
        Rng noise(options.seed ^ 0x5DEECE66Dull);
        std::vector<std::vector<double>> raw;
        std::vector<double> power;
        for (int i = 0; i < options.n_tx; ++i)
        {
            Record rec;
            for (int a = 0; a < 3; ++a)
                rec.tx[a] = rng.uniform(scene.bbox.min_corner[a], scene.bbox.max_corner[a]);
            char name[32];
            std::snprintf(name, sizeof name, "spectra/%05d.vxrf", i);
            rec.spectrum_path = name;
            raw.push_back(oracle_render_raw(scene, ds.geometry, rec.tx, step));
            power.push_back(std::accumulate(raw.back().begin(), raw.back().end(), 0.0));
            ds.records.push_back(std::move(rec));
        }

        double peak = 0.0;
        for (const auto &r : raw)
            for (double v : r)
                peak = std::max(peak, v);
        if (!(peak > 0.0))
            throw NumericalError("synthetic scene produced no received power");
        ds.normalization = peak;

        for (std::size_t i = 0; i < raw.size(); ++i)
        {
            Record &rec = ds.records[i];
            rec.spectrum = SpatialSpectrum(res);
            for (std::size_t c = 0; c < raw[i].size(); ++c)
                rec.spectrum.values[c] = static_cast<float>(raw[i][c] / peak);
            if (power[i] > 0.0)
                rec.rssi_dbm = 10.0 * std::log10(power[i]) + options.rssi_reference_dbm + options.rssi_noise_db * noise.normal();
        }

        json blobs = json::array();
        for (const Blob &b : scene.blobs)
            blobs.push_back({{"center", to_json(b.center)}, {"radius", b.radius}, {"peak_density", b.peak_density}, {"emission", b.emission}});
        ds.generator = {{"kind", "synthetic"},
                        {"seed", options.seed},
                        {"n_tx", options.n_tx},
                        {"fine_step", step},
                        {"tx_modulation", scene.tx_modulation},
                        {"rssi_noise_db", options.rssi_noise_db},
                        {"rssi_reference_dbm", options.rssi_reference_dbm},
                        {"blobs", blobs}};

        std::error_code ec;
        fs::create_directories(out_dir / "spectra", ec);
        if (ec)
            throw IoError("cannot create " + (out_dir / "spectra").string() + ": " + ec.message());
        for (const Record &rec : ds.records)
            write_spectrum(out_dir / rec.spectrum_path, rec.spectrum);
        write_manifest(out_dir, ds);
        return ds;
    }

    json manifest_to_json(const Dataset &ds)
    {
        json scene = geometry_json(ds.geometry);
        scene["normalization"] = ds.normalization;
        scene["units"] = ds.units;
        json records = json::array();
        for (const Record &r : ds.records)
        {
            json j = {{"tx_position", to_json(r.tx)}, {"spectrum_path", r.spectrum_path}};
            if (r.rssi_dbm)
                j["rssi_dbm"] = *r.rssi_dbm;
            records.push_back(std::move(j));
        }
        json out = {{"format", "voxelrf-dataset"}, {"version", 1}, {"scene", scene}, {"records", records}};
        if (!ds.generator.is_null())
            out["generator"] = ds.generator;
        return out;
    }

    void write_manifest(const fs::path &dir, const Dataset &dataset)
    {
        write_text_atomic(dir / kManifestName, manifest_to_json(dataset).dump(2) + "\n");
    }

    Dataset load_dataset(const fs::path &dir)
    {
        const auto bytes = read_file(dir / kManifestName);
        json j;
        try
        {
            j = json::parse(bytes.begin(), bytes.end());
        }
        catch (const json::exception &e)
        {
            throw FormatError((dir / kManifestName).string() + ": " + e.what());
        }

        Dataset ds;
        try
        {
            const json &scene = j.at("scene");
            ds.geometry = geometry_from_json(scene);
            ds.normalization = scene.at("normalization").get<double>();
            ds.units = scene.value("units", std::string("linear_power"));
            if (j.contains("generator"))
                ds.generator = j.at("generator");
            for (const json &r : j.at("records"))
            {
                Record rec;
                rec.tx = vec3_from_json(r.at("tx_position"), "tx_position");
                rec.spectrum_path = r.at("spectrum_path").get<std::string>();
                if (r.contains("rssi_dbm"))
                    rec.rssi_dbm = r.at("rssi_dbm").get<double>();
                ds.records.push_back(std::move(rec));
            }
        }
        catch (const json::exception &e)
        {
            throw FormatError((dir / kManifestName).string() + ": " + e.what());
        }
        catch (const ContractError &e)
        {
            throw FormatError((dir / kManifestName).string() + ": " + e.what());
        }
        if (!(ds.normalization > 0.0))
            throw FormatError("manifest normalization must be > 0");

        for (Record &rec : ds.records)
        {
            const fs::path p = dir / rec.spectrum_path;
            if (!fs::exists(p))
                throw IoError("spectrum file listed in manifest is missing: " + p.string());
            rec.spectrum = read_spectrum(p);
            if (!(rec.spectrum.res == ds.geometry.res))
                throw FormatError(p.string() + ": resolution does not match the manifest");
        }
        return ds;
    }

    Split split_records(std::size_t n, std::uint64_t seed, double train_fraction)
    {
        if (!(train_fraction >= 0.0 && train_fraction <= 1.0))
            throw ContractError("train_fraction must lie in [0, 1]");
        std::vector<std::size_t> idx(n);
        std::iota(idx.begin(), idx.end(), std::size_t(0));
        Rng rng(seed);
        for (std::size_t i = n; i > 1; --i)
            std::swap(idx[i - 1], idx[rng.below(i)]);
        const auto n_train = static_cast<std::size_t>(std::llround(train_fraction * double(n)));
        Split s;
        s.train.assign(idx.begin(), idx.begin() + std::ptrdiff_t(n_train));
        s.test.assign(idx.begin() + std::ptrdiff_t(n_train), idx.end());
        std::sort(s.train.begin(), s.train.end());
        std::sort(s.test.begin(), s.test.end());
        return s;
    }

    // ---- checkpoints ----------------------------------------------------------------------

    std::vector<std::uint8_t> encode_checkpoint(const FieldModel &model, const CheckpointMeta &meta)
    {
        model.validate();
        meta.geometry.validate();
        const json model_json = {{"dims", {model.dims().x, model.dims().y, model.dims().z}},
                                 {"bbox", bbox_json(model.bbox())},
                                 {"feature_dim", model.feature_dim()},
                                 {"hidden_width", model.hidden_width()},
                                 {"position_levels", model.enc_pos.levels},
                                 {"direction_levels", model.enc_dir.levels},
                                 {"density_bias", model.density_bias},
                                 {"deformation", model.deformation_enabled}};
        const json meta_json = {{"format_version", kCheckpointVersion},
                                {"seed", meta.seed},
                                {"iteration", meta.iteration},
                                {"config", meta.config},
                                {"geometry", geometry_json(meta.geometry)},
                                {"model", model_json}};
        const std::string meta_text = meta_json.dump();

        Writer w;
        w.bytes("VXCK");
        w.u32(kCheckpointVersion);
        w.u32(std::uint32_t(meta_text.size()));
        w.bytes(meta_text);
        const auto tensors = model.tensors();
        w.u32(std::uint32_t(tensors.size()));
        for (const auto &t : tensors)
        {
            w.u32(std::uint32_t(t.name.size()));
            w.bytes(t.name);
            w.u32(std::uint32_t(t.shape.size()));
            for (auto d : t.shape)
                w.u32(d);
            w.floats(t.data);
        }
        return w.take();
    }

    FieldModel decode_checkpoint(std::span<const std::uint8_t> bytes, CheckpointMeta *meta_out)
    {
        Reader r(bytes, "checkpoint");
        if (r.str(4) != "VXCK")
            throw FormatError("checkpoint: bad magic at byte offset 0");
        const std::uint32_t version = r.u32();
        if (version != kCheckpointVersion)
            throw FormatError("checkpoint: version " + std::to_string(version) + " is not supported (expected " +
                              std::to_string(kCheckpointVersion) + ")");
        const std::uint32_t meta_len = r.u32();
        const std::string meta_text = r.str(meta_len);

        ModelShape shape;
        CheckpointMeta meta;
        try
        {
            const json mj = json::parse(meta_text);
            if (mj.at("format_version").get<std::uint32_t>() != kCheckpointVersion)
                throw FormatError("checkpoint: metadata format_version mismatch");
            meta.seed = mj.at("seed").get<std::uint64_t>();
            meta.iteration = mj.at("iteration").get<std::int64_t>();
            meta.config = mj.at("config");
            meta.geometry = geometry_from_json(mj.at("geometry"));
            const json &m = mj.at("model");
            const auto dims = m.at("dims").get<std::vector<int>>();
            if (dims.size() != 3)
                throw FormatError("checkpoint: model.dims must have 3 entries");
            shape.dims = {dims[0], dims[1], dims[2]};
            shape.bbox = bbox_from_json(m.at("bbox"));
            shape.feature_dim = m.at("feature_dim").get<int>();
            shape.hidden_width = m.at("hidden_width").get<int>();
            shape.position_levels = m.at("position_levels").get<int>();
            shape.direction_levels = m.at("direction_levels").get<int>();
            shape.density_bias = m.at("density_bias").get<double>();
            shape.deformation = m.at("deformation").get<bool>();
        }
        catch (const json::exception &e)
        {
            throw FormatError(std::string("checkpoint: bad metadata: ") + e.what());
        }
        catch (const ContractError &e)
        {
            throw FormatError(std::string("checkpoint: bad metadata: ") + e.what());
        }

        FieldModel model;
        try
        {
            model = init_model(shape, 0);
        }
        catch (const ContractError &e)
        {
            throw FormatError(std::string("checkpoint: inconsistent model shape: ") + e.what());
        }

        auto tensors = model.tensors();
        const std::uint32_t count = r.u32();
        if (count != tensors.size())
            r.fail("tensor count " + std::to_string(count) + " does not match the expected " + std::to_string(tensors.size()));
        for (auto &t : tensors)
        {
            const std::uint32_t name_len = r.u32();
            if (name_len > 4096)
                r.fail("implausible tensor name length");
            const std::string name = r.str(name_len);
            if (name != t.name)
                r.fail("expected tensor '" + t.name + "', found '" + name + "'");
            const std::uint32_t rank = r.u32();
            if (rank > 8)
                r.fail("implausible rank for tensor '" + name + "'");
            std::vector<std::uint32_t> dims(rank);
            for (auto &d : dims)
                d = r.u32();
            if (dims != t.shape)
                throw FormatError("checkpoint: tensor '" + name + "' has shape " + shape_string(dims) +
                                  " but the model metadata requires " + shape_string(t.shape));
            r.floats(t.data);
        }
        if (r.remaining() != 0)
            r.fail("trailing bytes after tensor table");
        if (meta_out)
            *meta_out = std::move(meta);
        return model;
    }

    void save_checkpoint(const fs::path &path, const FieldModel &model, const CheckpointMeta &meta)
    {
        write_file_atomic(path, encode_checkpoint(model, meta));
    }

    FieldModel load_checkpoint(const fs::path &path, CheckpointMeta *meta)
    {
        const auto bytes = read_file(path);
        try
        {
            return decode_checkpoint(bytes, meta);
        }
        catch (const FormatError &e)
        {
            throw FormatError(path.string() + ": " + e.what());
        }
    }
}
