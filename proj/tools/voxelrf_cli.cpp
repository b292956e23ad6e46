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

// voxelrf command-line driver: synth, train, infer, eval.
//
// Exit codes: 0 ok, 1 unexpected failure, 2 configuration/usage error, 3 I/O error,
// 4 malformed input file, 5 numerical failure.

#include "voxelrf/dataio.hpp"
#include "voxelrf/metrics.hpp"
#include "voxelrf/run_config.hpp"
#include "voxelrf/trainer.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <iostream>
#include <sstream>

using namespace voxelrf;
namespace fs = std::filesystem;

namespace
{
    using Clock = std::chrono::steady_clock;

    double seconds_since(Clock::time_point t0)
    {
        return std::chrono::duration<double>(Clock::now() - t0).count();
    }

    SpectrumResolution spectrum_res(const RunConfig &cfg)
    {
        const auto r = cfg.at("scene.spectrum_res").get<std::vector<int>>();
        if (r.size() != 2 || r[0] < 1 || r[1] < 1)
            throw ConfigError("scene.spectrum_res must be two positive integers M,N");
        return {r[0], r[1]};
    }

    int cmd_synth(const RunConfig &cfg)
    {
        const SyntheticScene scene = scene_from_config(cfg);
        GenerateOptions opt;
        opt.n_tx = int(cfg.integer("synth.n_tx"));
        if (opt.n_tx < 1)
            throw ConfigError("synth.n_tx must be >= 1");
        opt.seed = std::uint64_t(cfg.integer("synth.seed"));
        opt.fine_step = cfg.real("synth.fine_step");
        opt.rssi_noise_db = cfg.real("synth.rssi_noise_db");
        opt.rssi_reference_dbm = cfg.real("synth.rssi_reference_dbm");
        const auto t0 = Clock::now();
        const Dataset ds = generate_dataset(scene, spectrum_res(cfg), opt, cfg.str("synth.out"));
        std::fprintf(stderr, "synth: %zu spectra (%dx%d) written to %s in %.2f s\n", ds.records.size(),
                     ds.geometry.res.azimuth, ds.geometry.res.elevation, cfg.str("synth.out").c_str(), seconds_since(t0));
        return 0;
    }

    int cmd_train(const RunConfig &cfg)
    {
        const TrainConfig tc = train_config_from(cfg);
        const Dataset ds = load_dataset(cfg.str("train.data"));
        const double fraction = cfg.real("train.train_fraction");
        if (!(fraction > 0.0 && fraction <= 1.0))
            throw ConfigError("train.train_fraction must lie in (0, 1]");
        const Split split = split_records(ds.records.size(), std::uint64_t(cfg.integer("train.split_seed")), fraction);
        if (split.train.empty())
            throw ConfigError("the training split is empty");

        std::fprintf(stderr, "train: %zu training / %zu held-out records, grid %dx%dx%d, F=%d, %lld iterations\n",
                     split.train.size(), split.test.size(), tc.final_dims.x, tc.final_dims.y, tc.final_dims.z,
                     tc.feature_dim, static_cast<long long>(tc.total_iters));
        const auto t0 = Clock::now();
        TrainCallbacks cb;
        cb.on_log = [&](const LogRow &row)
        { std::fprintf(stderr, "%s  (%.1f s)\n", format_log_row(row).c_str(), seconds_since(t0)); };
        cb.on_upsample = [](const UpsampleEvent &e)
        {
            const GridDims a = e.before.dims(), b = e.after.dims();
            std::fprintf(stderr, "upsample at %lld: %dx%dx%d -> %dx%dx%d\n", static_cast<long long>(e.iteration), a.x,
                         a.y, a.z, b.x, b.y, b.z);
        };
        const TrainResult result = train(ds, split.train, tc, cb);

        CheckpointMeta meta;
        meta.seed = tc.seed;
        meta.iteration = tc.total_iters;
        meta.config = {{"train", to_json(tc)},
                       {"split_seed", cfg.integer("train.split_seed")},
                       {"train_fraction", fraction}};
        meta.geometry = ds.geometry;
        save_checkpoint(cfg.str("train.checkpoint"), result.model, meta);

        if (const std::string log = cfg.str("train.log"); !log.empty())
        {
            std::string text = std::string(kLogHeader) + "\n";
            for (const LogRow &row : result.history)
                text += format_log_row(row) + "\n";
            write_text_atomic(log, text);
        }
        const double skipped = result.samples ? double(result.skipped) / double(result.samples) : 0.0;
        std::fprintf(stderr, "train: done in %.1f s, %.1f%% of samples skipped, checkpoint %s\n", seconds_since(t0),
                     100.0 * skipped, cfg.str("train.checkpoint").c_str());
        return 0;
    }

    int cmd_infer(const RunConfig &cfg)
    {
        CheckpointMeta meta;
        const FieldModel model = load_checkpoint(cfg.str("infer.checkpoint"), &meta);
        const Vec3 tx = cfg.vec3("infer.tx");
        if (!tx.finite())
            throw ConfigError("infer.tx must be finite");
        RenderOptions opt;
        opt.skip_threshold = cfg.real("infer.skip_threshold");
        if (!(opt.skip_threshold >= 0.0))
            throw ConfigError("infer.skip_threshold must be >= 0");
        const auto t0 = Clock::now();
        RenderStats stats;
        const SpatialSpectrum s = render_spectrum(model, meta.geometry, tx, opt, &stats);
        const double elapsed = seconds_since(t0);
        write_spectrum(cfg.str("infer.out"), s);
        std::fprintf(stderr, "infer: %dx%d spectrum in %.4f s (%lld samples, %.1f%% skipped) -> %s\n", s.res.azimuth,
                     s.res.elevation, elapsed, static_cast<long long>(stats.samples),
                     stats.samples ? 100.0 * double(stats.skipped) / double(stats.samples) : 0.0,
                     cfg.str("infer.out").c_str());
        return 0;
    }

    std::string summary_line(const std::string &name, const PercentileSummary &s, std::size_t n)
    {
        std::ostringstream os;
        os.precision(9);
        os << name << ',' << n << ',' << s.p25 << ',' << s.median << ',' << s.p75 << '\n';
        return os.str();
    }

    int cmd_eval(const RunConfig &cfg)
    {
        CheckpointMeta meta;
        const FieldModel model = load_checkpoint(cfg.str("eval.checkpoint"), &meta);
        const Dataset ds = load_dataset(cfg.str("eval.data"));
        const double fraction = cfg.real("eval.train_fraction");
        if (!(fraction >= 0.0 && fraction < 1.0))
            throw ConfigError("eval.train_fraction must lie in [0, 1)");
        const Split split = split_records(ds.records.size(), std::uint64_t(cfg.integer("eval.split_seed")), fraction);
        if (split.test.empty())
            throw ConfigError("the held-out split is empty");
        RenderOptions opt;
        opt.skip_threshold = cfg.real("eval.skip_threshold");

        const fs::path out = cfg.str("eval.out");
        std::error_code ec;
        fs::create_directories(out, ec);
        if (ec)
            throw IoError("cannot create " + out.string() + ": " + ec.message());

        std::vector<double> ssims;
        std::vector<SpatialSpectrum> predicted;
        for (std::size_t idx : split.test)
        {
            predicted.push_back(render_spectrum(model, ds.geometry, ds.records[idx].tx, opt));
            ssims.push_back(ssim(predicted.back(), ds.records[idx].spectrum));
        }
        const PercentileSummary ss = percentile_summary(ssims);
        write_text_atomic(out / "ssim.csv", format_csv("tx_index", "ssim", split.test, ssims));
        write_text_atomic(out / "ssim_cdf.csv", format_cdf_csv(ss, "ssim"));
        std::string summary = "metric,count,p25,median,p75\n" + summary_line("ssim", ss, ssims.size());
        std::fprintf(stderr, "eval: SSIM over %zu held-out records: p25 %.4f, median %.4f, p75 %.4f\n", ssims.size(),
                     ss.p25, ss.median, ss.p75);

        if (cfg.boolean("eval.rssi"))
        {
            std::vector<RssiObservation> obs;
            for (std::size_t idx : split.train)
                if (ds.records[idx].rssi_dbm)
                    obs.push_back({ds.records[idx].tx, *ds.records[idx].rssi_dbm});
            const double c = fit_rssi_calibration(model, ds.geometry, obs, opt);
            std::vector<std::size_t> idxs;
            std::vector<double> pred, meas;
            for (std::size_t k = 0; k < split.test.size(); ++k)
            {
                const Record &r = ds.records[split.test[k]];
                if (!r.rssi_dbm)
                    continue;
                double power = 0.0;
                for (float v : predicted[k].values)
                    power += v;
                if (!(power > 0.0))
                    continue;
                idxs.push_back(split.test[k]);
                pred.push_back(aggregate_rssi(predicted[k], c));
                meas.push_back(*r.rssi_dbm);
            }
            if (idxs.empty())
                throw NumericalError("no held-out record has both a measured RSSI and predicted power");
            const RssiErrorReport rep = rssi_error(pred, meas);
            write_text_atomic(out / "rssi_error.csv", format_csv("record_index", "rssi_error_db", idxs, rep.errors));
            write_text_atomic(out / "rssi_error_cdf.csv", format_cdf_csv(rep.summary, "rssi_error_db"));
            summary += summary_line("rssi_error_db", rep.summary, rep.errors.size());
            std::fprintf(stderr, "eval: RSSI calibration %.3f dB; abs error p25 %.3f, median %.3f, p75 %.3f dB\n", c,
                         rep.summary.p25, rep.summary.median, rep.summary.p75);
        }
        write_text_atomic(out / "summary.csv", summary);
        return 0;
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"voxelrf: voxel-grid radiance fields for wireless spatial spectrum synthesis"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for every command");
    const std::string note = "Further settings are given as --name value (section.name or, for this command's "
                             "section, the bare name with '-' for '_').";

    struct Sub
    {
        std::string name;
        CLI::App *app = nullptr;
        std::string config;
    };
    std::vector<Sub> subs = {{"synth"}, {"train"}, {"infer"}, {"eval"}};
    const std::map<std::string, std::string> blurbs = {
        {"synth", "Generate a synthetic dataset from an analytic scene"},
        {"train", "Train a model on a dataset"},
        {"infer", "Render the spectrum for one transmitter position"},
        {"eval", "Score a model on the held-out split"}};
    for (Sub &s : subs)
    {
        s.app = app.add_subcommand(s.name, blurbs.at(s.name));
        s.app->allow_extras();
        s.app->footer(note);
        s.app->add_option("--config", s.config, "JSON config file (sections: scene, synth, train, infer, eval)");
    }

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    for (const Sub &s : subs)
    {
        if (!s.app->parsed())
            continue;
        try
        {
            const std::optional<fs::path> file = s.config.empty() ? std::nullopt : std::optional<fs::path>(s.config);
            const RunConfig cfg = build_run_config(s.name, file, s.app->remaining());
            if (s.name == "synth")
                return cmd_synth(cfg);
            if (s.name == "train")
                return cmd_train(cfg);
            if (s.name == "infer")
                return cmd_infer(cfg);
            return cmd_eval(cfg);
        }
        catch (const ConfigError &e)
        {
            std::fprintf(stderr, "error: %s\n", e.what());
            return 2;
        }
        catch (const ContractError &e)
        {
            std::fprintf(stderr, "error: %s\n", e.what());
            return 2;
        }
        catch (const IoError &e)
        {
            std::fprintf(stderr, "I/O error: %s\n", e.what());
            return 3;
        }
        catch (const FormatError &e)
        {
            std::fprintf(stderr, "format error: %s\n", e.what());
            return 4;
        }
        catch (const NumericalError &e)
        {
            std::fprintf(stderr, "numerical error: %s\n", e.what());
            return 5;
        }
        catch (const std::exception &e)
        {
            std::fprintf(stderr, "error: %s\n", e.what());
            return 1;
        }
    }
    return 2;
}
