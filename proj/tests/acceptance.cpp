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

// Acceptance suite: one PASS/FAIL line per criterion on stdout, progress on stderr.
// Usage: voxelrf_acceptance [criterion numbers...]   (default: all)

#include "fixtures.hpp"
#include "gradcheck.hpp"
#include "voxelrf/metrics.hpp"
#include "voxelrf/trainer.hpp"

#include <chrono>
#include <cstdarg>
#include <cstring>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <sys/wait.h>

using namespace voxelrf;
namespace fs = std::filesystem;

namespace
{
    using Clock = std::chrono::steady_clock;

    double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

    std::string fmt(const char *f, ...) __attribute__((format(printf, 1, 2)));
    std::string fmt(const char *f, ...)
    {
        char buf[1024];
        va_list ap;
        va_start(ap, f);
        std::vsnprintf(buf, sizeof buf, f, ap);
        va_end(ap);
        return buf;
    }

    struct Verdict
    {
        bool pass = false;
        std::string detail;
    };

    // ---- shared fixtures: the desk datasets and trained models ---------------------------

    constexpr int kDeskTx = 160;
    constexpr std::uint64_t kDataSeed = 7;
    constexpr std::uint64_t kSplitSeed = 0;

    struct Workspace
    {
        testing::ScratchDir dir{"acceptance"};
        std::map<double, Dataset> datasets; // by tx_modulation
        Split split = split_records(kDeskTx, kSplitSeed, 0.8);

        const Dataset &dataset(double modulation)
        {
            auto it = datasets.find(modulation);
            if (it != datasets.end())
                return it->second;
            const auto t0 = Clock::now();
            GenerateOptions opt;
            opt.n_tx = kDeskTx;
            opt.seed = kDataSeed;
            const fs::path out = dir.path() / fmt("data-m%.2f", modulation);
            Dataset ds = generate_dataset(demo_scene(modulation), {36, 9}, opt, out);
            std::fprintf(stderr, "  generated %d-record dataset (tx_modulation %.2f) in %.1f s\n", kDeskTx, modulation,
                         since(t0));
            return datasets.emplace(modulation, std::move(ds)).first->second;
        }
    };

    struct UpsampleCheck
    {
        std::int64_t iteration = 0;
        GridDims before, after;
        std::int64_t coinciding = 0;
        std::int64_t mismatched = 0;
        double loss_before = 0.0;
        double loss_after = 0.0;
    };

    struct DeskRun
    {
        std::string label;
        TrainConfig config;
        TrainResult result;
        double train_seconds = 0.0;
        std::vector<UpsampleCheck> upsamples;
        double initial_fixed_loss = 0.0; // spectrum loss of the initial model on a fixed training batch
        double final_fixed_loss = 0.0;
        std::vector<double> heldout_ssim;
        std::vector<SpatialSpectrum> heldout_pred;
        RenderStats heldout_stats;
    };

    std::vector<RayQuery> fixed_batch(const Dataset &ds, std::span<const std::size_t> records, int n, std::uint64_t seed)
    {
        Rng rng(seed);
        return sample_rays(ds, records, n, rng);
    }

    double spectrum_loss(const FieldModel &m, const Dataset &ds, std::span<const RayQuery> rays, double tau)
    {
        BatchOptions opt;
        opt.render.skip_threshold = tau;
        opt.render.step = default_step(TrainConfig::desk().final_dims, ds.geometry.bbox);
        return evaluate_batch(m, ds.geometry, rays, opt, nullptr).loss.spectrum_loss;
    }

    // Counts nodes of `after` that coincide with nodes of `before` and whose values differ.
    void compare_coinciding(const VoxelGrid &before, const VoxelGrid &after, UpsampleCheck &out)
    {
        const GridDims a = before.dims(), b = after.dims();
        auto coarse_index = [&](int axis, int i) -> int
        {
            const std::int64_t num = std::int64_t(i) * (a[axis] - 1);
            return num % (b[axis] - 1) == 0 ? int(num / (b[axis] - 1)) : -1;
        };
        for (int k = 0; k < b.z; ++k)
            for (int j = 0; j < b.y; ++j)
                for (int i = 0; i < b.x; ++i)
                {
                    const int ci = coarse_index(0, i), cj = coarse_index(1, j), ck = coarse_index(2, k);
                    if (ci < 0 || cj < 0 || ck < 0)
                        continue;
                    ++out.coinciding;
                    const auto x = before.node(ci, cj, ck), y = after.node(i, j, k);
                    for (int c = 0; c < before.channels(); ++c)
                        if (std::memcmp(&x[c], &y[c], sizeof(float)) != 0)
                            ++out.mismatched;
                }
    }

    std::unique_ptr<DeskRun> desk_run(Workspace &ws, const std::string &label, double modulation, bool deformation,
                                      double lambda_bg)
    {
        auto run = std::make_unique<DeskRun>();
        run->label = label;
        const Dataset &ds = ws.dataset(modulation);
        TrainConfig c = TrainConfig::desk();
        c.deformation = deformation;
        c.lambda_bg = lambda_bg;
        c.log_interval = 500;
        run->config = c;

        const auto heldout_batch = fixed_batch(ds, ws.split.test, 2048, 101);
        const auto train_batch = fixed_batch(ds, ws.split.train, 4096, 102);
        run->initial_fixed_loss =
            spectrum_loss(init_model(c.model_shape(ds.geometry.bbox, 0), c.seed), ds, train_batch, c.skip_threshold);

        TrainCallbacks cb;
        const auto t0 = Clock::now();
        double excluded = 0.0; // time spent in the checks below, not training
        cb.on_upsample = [&](const UpsampleEvent &e)
        {
            const auto c0 = Clock::now();
            UpsampleCheck u;
            u.iteration = e.iteration;
            u.before = e.before.dims();
            u.after = e.after.dims();
            compare_coinciding(e.before.density, e.after.density, u);
            compare_coinciding(e.before.feature, e.after.feature, u);
            u.loss_before = spectrum_loss(e.before, ds, heldout_batch, c.skip_threshold);
            u.loss_after = spectrum_loss(e.after, ds, heldout_batch, c.skip_threshold);
            run->upsamples.push_back(u);
            excluded += since(c0);
        };
        cb.on_log = [&](const LogRow &r)
        { std::fprintf(stderr, "  [%s] %s  (%.0f s)\n", label.c_str(), format_log_row(r).c_str(), since(t0)); };
        run->result = train(ds, ws.split.train, c, cb);
        run->train_seconds = since(t0) - excluded;

        run->final_fixed_loss = spectrum_loss(run->result.model, ds, train_batch, c.skip_threshold);
        RenderOptions ro;
        ro.skip_threshold = c.skip_threshold;
        for (std::size_t idx : ws.split.test)
        {
            run->heldout_pred.push_back(render_spectrum(run->result.model, ds.geometry, ds.records[idx].tx, ro,
                                                        &run->heldout_stats));
            run->heldout_ssim.push_back(ssim(run->heldout_pred.back(), ds.records[idx].spectrum));
        }
        std::fprintf(stderr, "  [%s] trained in %.1f s; held-out median SSIM %.4f\n", label.c_str(),
                     run->train_seconds, percentile_summary(run->heldout_ssim).median);
        return run;
    }

    struct Runs
    {
        Workspace ws;
        std::map<std::string, std::unique_ptr<DeskRun>> cache;

        const DeskRun &get(const std::string &label, double modulation, bool deformation, double lambda_bg)
        {
            auto it = cache.find(label);
            if (it == cache.end())
                it = cache.emplace(label, desk_run(ws, label, modulation, deformation, lambda_bg)).first;
            return *it->second;
        }

        const DeskRun &main() { return get("m0.5-deform", 0.5, true, kDefaultLambdaBg); }
    };

    // ---- criteria ---------------------------------------------------------------------------

    Verdict compositing_oracle()
    {
        const auto t0 = Clock::now();
        Rng rng(1001);
        double worst = 0.0;
        for (int ray = 0; ray < 1000; ++ray)
        {
            const int K = int(rng.below(513));
            std::vector<double> sigma(K), S(K), delta(K);
            for (int i = 0; i < K; ++i)
            {
                sigma[i] = rng.uniform() < 0.4 ? 0.0 : -std::log(rng.uniform(1e-3, 1.0)) * 20.0;
                S[i] = rng.uniform(1e-6, 1.0 - 1e-6);
                delta[i] = rng.uniform(1e-3, 0.1);
            }
            const Composite c = composite(sigma, S, delta);
            const OracleRay o = oracle_composite(sigma, S, delta);
            worst = std::max({worst, std::abs(c.radiance - o.radiance),
                              std::abs(c.final_transmittance - o.final_transmittance)});
        }
        const double secs = since(t0);
        return {worst < 1e-10 && secs < 5.0, fmt("max |diff| %.3g over 1000 rays (K<=512), %.2f s", worst, secs)};
    }

    Verdict conservation(Runs &runs)
    {
        const DeskRun &r = runs.main();
        const Dataset &ds = runs.ws.dataset(0.5);
        double worst = 0.0;
        std::int64_t rays = 0;
        for (double tau : {1e-4, 0.0})
        {
            RenderStats st;
            RenderOptions ro;
            ro.skip_threshold = tau;
            for (std::size_t idx : runs.ws.split.test)
                render_spectrum(r.result.model, ds.geometry, ds.records[idx].tx, ro, &st);
            worst = std::max(worst, st.max_conservation_error);
            rays += std::int64_t(runs.ws.split.test.size()) * ds.geometry.res.cells();
        }
        return {worst <= 1e-6, fmt("max |sum w + T_K - 1| = %.3g over %lld rays of trained-model 36x9 spectra", worst,
                                   static_cast<long long>(rays))};
    }

    Verdict gradient_check()
    {
        const auto t0 = Clock::now();
        const Dataset ds = testing::memory_dataset(testing::two_blob_scene(), 6, 1003, {12, 4});
        ModelShape shape;
        shape.dims = {4, 4, 4};
        shape.feature_dim = 2;
        shape.hidden_width = 8;
        FieldModel m = init_model(shape, 1003);
        Rng prng(1004);
        for (auto &t : m.tensors())
            for (float &v : t.data)
                v = static_cast<float>(t.is_grid ? prng.uniform(-1.0, 1.5) : prng.uniform(-0.6, 0.6));

        const std::vector<std::size_t> recs = {0, 1, 2, 3, 4, 5};
        Rng rng(1005);
        const auto rays = sample_rays(ds, recs, 16, rng);
        BatchOptions opt;
        opt.render.skip_threshold = 0.0;
        opt.lambda_bg = 0.01;
        GradientSet g = GradientSet::zeros_like(m);
        evaluate_batch(m, ds.geometry, rays, opt, &g);
        auto loss = [&] { return evaluate_batch(m, ds.geometry, rays, opt, nullptr).loss.total; };

        auto tensors = m.tensors();
        std::int64_t checked = 0, failed = 0;
        double worst_rel = 0.0;
        std::string first_failure;
        for (std::size_t t = 0; t < tensors.size(); ++t)
            for (std::size_t i = 0; i < tensors[t].data.size(); ++i)
            {
                const double numeric = testing::central_difference(tensors[t].data[i], 1e-4, loss);
                const double analytic = g.buffers[t][i];
                ++checked;
                const double scale = std::max(std::abs(analytic), std::abs(numeric));
                if (scale > 1e-6)
                    worst_rel = std::max(worst_rel, std::abs(analytic - numeric) / scale);
                if (!testing::gradients_agree(analytic, numeric, 1e-4, 1e-6))
                {
                    if (failed++ == 0)
                        first_failure = fmt(" first: %s[%zu] %.6g vs %.6g", tensors[t].name.c_str(), i, analytic, numeric);
                }
            }
        const double secs = since(t0);
        return {failed == 0 && secs < 60.0,
                fmt("%lld/%lld parameters agree (worst rel. err %.2g where |grad| > 1e-6), %.1f s%s",
                    static_cast<long long>(checked - failed), static_cast<long long>(checked), worst_rel, secs,
                    first_failure.c_str())};
    }

    Verdict trilinear()
    {
        const Aabb box{{-1.5, 0.0, -0.5}, {2.5, 1.0, 3.0}};
        VoxelGrid g({7, 5, 9}, 1, box);
        auto f = [](const Vec3 &p) { return 2.0 * p.x + 3.0 * p.y - p.z; };
        for (int k = 0; k < 9; ++k)
            for (int j = 0; j < 5; ++j)
                for (int i = 0; i < 7; ++i)
                    g.node(i, j, k)[0] = static_cast<float>(f(g.node_position(i, j, k)));
        Rng rng(1006);
        auto point = [&]
        {
            return Vec3{rng.uniform(box.min_corner.x, box.max_corner.x), rng.uniform(box.min_corner.y, box.max_corner.y),
                        rng.uniform(box.min_corner.z, box.max_corner.z)};
        };
        double worst_affine = 0.0;
        for (int t = 0; t < 10000; ++t)
        {
            const Vec3 p = point();
            worst_affine = std::max(worst_affine, std::abs(g.interpolate(p)[0] - f(p)) / std::max(1.0, std::abs(f(p))));
        }

        double worst_adj = 0.0;
        for (int t = 0; t < 20; ++t)
        {
            VoxelGrid h({5, 4, 6}, 3, box);
            for (float &v : h.values())
                v = static_cast<float>(rng.uniform(-1, 1));
            const Vec3 p = point();
            const std::vector<double> up = {rng.normal(), rng.normal(), rng.normal()};
            std::vector<double> grad(h.values().size(), 0.0);
            interpolate_backward(h, p, up, grad);
            auto obj = [&]
            {
                const auto v = h.interpolate(p);
                return up[0] * v[0] + up[1] * v[1] + up[2] * v[2];
            };
            auto vals = h.values();
            for (std::size_t i = 0; i < vals.size(); ++i)
            {
                const double num = testing::central_difference(vals[i], 1e-4, obj);
                const double scale = std::max(std::abs(num), std::abs(grad[i]));
                if (scale > 0.0)
                    worst_adj = std::max(worst_adj, std::abs(num - grad[i]) / scale);
            }
        }
        return {worst_affine < 1e-6 && worst_adj < 1e-5,
                fmt("affine max rel. err %.2g (10000 points); adjoint max rel. err %.2g", worst_affine, worst_adj)};
    }

    Verdict skipping(Runs &runs)
    {
        const DeskRun &r = runs.main();
        const Dataset &ds = runs.ws.dataset(0.5);
        double worst = 0.0;
        RenderStats with, without;
        for (std::size_t idx : runs.ws.split.test)
        {
            const SpatialSpectrum a = render_spectrum(r.result.model, ds.geometry, ds.records[idx].tx, {0.0, 1e-4}, &with);
            const SpatialSpectrum b = render_spectrum(r.result.model, ds.geometry, ds.records[idx].tx, {0.0, 0.0}, &without);
            for (std::size_t c = 0; c < a.values.size(); ++c)
                worst = std::max(worst, std::abs(double(a.values[c]) - double(b.values[c])));
        }
        const double frac = double(with.skipped) / double(with.samples);
        return {worst < 1e-3 && frac >= 0.30,
                fmt("max |dR| %.3g over %zu held-out spectra; %.1f%% of samples skipped", worst,
                    runs.ws.split.test.size(), 100.0 * frac)};
    }

    Verdict progressive(Runs &runs)
    {
        const DeskRun &r = runs.main();
        bool ok = r.upsamples.size() == std::size_t(r.config.stages);
        std::string detail;
        for (const UpsampleCheck &u : r.upsamples)
        {
            const double change = std::abs(u.loss_after - u.loss_before) / u.loss_before;
            ok = ok && u.mismatched == 0 && u.coinciding > 0 && change < 0.20;
            detail += fmt("%s@%lld %d^3->%d^3: %lld coinciding nodes, %lld changed, held-out loss %.4g->%.4g (%+.1f%%)",
                          detail.empty() ? "" : "; ", static_cast<long long>(u.iteration), u.before.x, u.after.x,
                          static_cast<long long>(u.coinciding), static_cast<long long>(u.mismatched), u.loss_before,
                          u.loss_after, 100.0 * (u.loss_after - u.loss_before) / u.loss_before);
        }
        return {ok, detail};
    }

    Verdict desk_training(Runs &runs)
    {
        const DeskRun &r = runs.main();
        const PercentileSummary s = percentile_summary(r.heldout_ssim);
        const double ratio = r.final_fixed_loss / r.initial_fixed_loss;
        const double logged = r.result.history.back().spectrum_loss / r.result.history.front().spectrum_loss;
        return {s.median >= 0.85 && ratio < 0.10 && r.train_seconds <= 600.0,
                fmt("held-out SSIM p25/median/p75 %.4f/%.4f/%.4f; final/initial spectrum loss %.4f (fixed 4096-ray "
                    "batch; logged batches %.4f); training %.0f s",
                    s.p25, s.median, s.p75, ratio, logged, r.train_seconds)};
    }

    Verdict deformation_ablation(Runs &runs)
    {
        const double on5 = percentile_summary(runs.main().heldout_ssim).median;
        const double off5 = percentile_summary(runs.get("m0.5-static", 0.5, false, kDefaultLambdaBg).heldout_ssim).median;
        const double on0 = percentile_summary(runs.get("m0-deform", 0.0, true, kDefaultLambdaBg).heldout_ssim).median;
        const double off0 = percentile_summary(runs.get("m0-static", 0.0, false, kDefaultLambdaBg).heldout_ssim).median;
        const double gap5 = on5 - off5, gap0 = std::abs(on0 - off0);
        return {gap5 >= 0.02 && gap0 < 0.02,
                fmt("tx_modulation 0.5: %.4f with vs %.4f without (gap %+.4f); tx_modulation 0: %.4f vs %.4f (|gap| %.4f)",
                    on5, off5, gap5, on0, off0, gap0)};
    }

    Verdict rssi(Runs &runs)
    {
        const DeskRun &r = runs.main();
        const Dataset &ds = runs.ws.dataset(0.5);
        RenderOptions ro;
        std::vector<RssiObservation> obs;
        for (std::size_t idx : runs.ws.split.train)
            obs.push_back({ds.records[idx].tx, *ds.records[idx].rssi_dbm});
        const double c = fit_rssi_calibration(r.result.model, ds.geometry, obs, ro);
        std::vector<double> pred, meas;
        for (std::size_t k = 0; k < runs.ws.split.test.size(); ++k)
        {
            pred.push_back(aggregate_rssi(r.heldout_pred[k], c));
            meas.push_back(*ds.records[runs.ws.split.test[k]].rssi_dbm);
        }
        const RssiErrorReport rep = rssi_error(pred, meas);
        return {rep.summary.median <= 3.0,
                fmt("held-out |error| p25/median/p75 %.2f/%.2f/%.2f dB (1 dB measurement noise, calibration %.2f dB)",
                    rep.summary.p25, rep.summary.median, rep.summary.p75, c)};
    }

    int run_cli(const std::string &args, const fs::path &cwd)
    {
        const std::string cmd = "cd '" + cwd.string() + "' && '" VOXELRF_CLI_PATH "' " + args + " >/dev/null 2>&1";
        const int status = std::system(cmd.c_str());
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    }

    std::string slurp(const fs::path &p)
    {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream os;
        os << in.rdbuf();
        return os.str();
    }

    Verdict determinism()
    {
        testing::ScratchDir dir("determinism");
        const std::string synth = "synth --scene demo --n-tx 40 --seed 11 --out data";
        const std::string train = "train --data data --checkpoint model.vxck --log log.csv --final-dims 16 "
                                  "--total-iters 300 --log-interval 20 --seed 5";
        const std::string eval = "eval --checkpoint model.vxck --data data --out metrics --rssi";
        std::vector<std::map<std::string, std::string>> trees;
        for (const char *name : {"a", "b"})
        {
            const fs::path root = dir.path() / name;
            fs::create_directories(root);
            if (run_cli(synth, root) != 0 || run_cli(train, root) != 0 || run_cli(eval, root) != 0)
                return {false, "a pipeline command failed"};
            std::map<std::string, std::string> files;
            for (const auto &e : fs::recursive_directory_iterator(root))
                if (e.is_regular_file())
                    files[fs::relative(e.path(), root).string()] = slurp(e.path());
            trees.push_back(std::move(files));
        }
        std::size_t differing = 0;
        for (const auto &[name, bytes] : trees[0])
            if (!trees[1].count(name) || trees[1].at(name) != bytes)
                ++differing;
        const bool complete = trees[0].count("log.csv") && trees[0].count("metrics/ssim.csv") &&
                              trees[0].count("metrics/rssi_error.csv") && trees[0].count("data/manifest.json");
        return {differing == 0 && trees[0].size() == trees[1].size() && complete,
                fmt("%zu files compared (dataset, checkpoint, loss log, metric CSVs), %zu differ", trees[0].size(),
                    differing)};
    }

    Verdict performance(Runs &runs)
    {
        const DeskRun &r = runs.main();
        const Dataset &ds = runs.ws.dataset(0.5);
        auto time_render = [&](double tau)
        {
            std::vector<double> t;
            for (int rep = 0; rep < 5; ++rep)
                for (std::size_t idx : runs.ws.split.test)
                {
                    const auto t0 = Clock::now();
                    render_spectrum(r.result.model, ds.geometry, ds.records[idx].tx, {0.0, tau});
                    t.push_back(since(t0));
                }
            return percentile(t, 0.5);
        };
        time_render(1e-4); // warm caches
        const double skip = time_render(1e-4), full = time_render(0.0);
        return {skip < 0.100 && skip <= full,
                fmt("median single-threaded 36x9 inference %.1f ms with skipping, %.1f ms without", 1e3 * skip,
                    1e3 * full)};
    }

    double ambiguous_fraction(const DeskRun &r, Runs &runs)
    {
        const Dataset &ds = runs.ws.dataset(0.5);
        RenderOptions ro;
        std::int64_t n = 0, mid = 0;
        for (std::size_t idx : runs.ws.split.test)
            for (int m = 0; m < ds.geometry.res.azimuth; ++m)
                for (int e = 0; e < ds.geometry.res.elevation; ++e)
                {
                    const RayResult rr = render_ray(r.result.model, ds.geometry, ds.records[idx].tx,
                                                    direction_from_angles(m, e, ds.geometry.res), ro);
                    ++n;
                    mid += rr.final_transmittance > 0.1 && rr.final_transmittance < 0.9;
                }
        return double(mid) / double(n);
    }

    Verdict background_entropy_behaviour(Runs &runs)
    {
        const double half = background_entropy(std::vector<double>{0.5}).loss;
        const double lo = background_entropy(std::vector<double>{0.0}).loss;
        const double hi = background_entropy(std::vector<double>{1.0}).loss;
        const bool unit = std::abs(half - std::log(2.0)) <= 1e-9 && lo < 2e-5 && hi < 2e-5;
        const double with = ambiguous_fraction(runs.main(), runs);
        const double without = ambiguous_fraction(runs.get("m0.5-nobg", 0.5, true, 0.0), runs);
        return {unit && with <= without,
                fmt("loss(0.5)-ln2 = %.2g, loss(0) = %.2g, loss(1) = %.2g; held-out rays with T_K in (0.1,0.9): "
                    "%.2f%% (lambda_bg 1e-4) vs %.2f%% (lambda_bg 0)",
                    half - std::log(2.0), lo, hi, 100.0 * with, 100.0 * without)};
    }
}

int main(int argc, char **argv)
{
    std::set<int> wanted;
    for (int i = 1; i < argc; ++i)
        wanted.insert(std::atoi(argv[i]));
    if (wanted.empty())
        for (int i = 1; i <= 12; ++i)
            wanted.insert(i);

    Runs runs;
    struct Criterion
    {
        int id;
        const char *name;
        std::function<Verdict()> check;
    };
    const std::vector<Criterion> criteria = {
        {1, "compositing matches the product-form oracle", compositing_oracle},
        {2, "weights and final transmittance sum to one", [&] { return conservation(runs); }},
        {3, "end-to-end gradient check", gradient_check},
        {4, "trilinear exactness and adjoint", trilinear},
        {5, "empty-space skipping soundness", [&] { return skipping(runs); }},
        {6, "progressive upsampling", [&] { return progressive(runs); }},
        {7, "end-to-end desk training", [&] { return desk_training(runs); }},
        {8, "deformation ablation", [&] { return deformation_ablation(runs); }},
        {9, "RSSI pipeline", [&] { return rssi(runs); }},
        {10, "determinism of synth/train/eval", determinism},
        {11, "performance envelope", [&] { return performance(runs); }},
        {12, "background entropy behaviour", [&] { return background_entropy_behaviour(runs); }},
    };

    int failures = 0;
    const auto t0 = Clock::now();
    for (const Criterion &c : criteria)
    {
        if (!wanted.count(c.id))
            continue;
        std::fprintf(stderr, "criterion %d: %s ...\n", c.id, c.name);
        Verdict v;
        try
        {
            v = c.check();
        }
        catch (const std::exception &e)
        {
            v = {false, std::string("exception: ") + e.what()};
        }
        failures += !v.pass;
        std::printf("%s  %2d  %s: %s\n", v.pass ? "PASS" : "FAIL", c.id, c.name, v.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%s: %zu criteria, %d failed, %.0f s\n", failures ? "FAILED" : "ALL PASSED", wanted.size(), failures,
                since(t0));
    return failures ? 1 : 0;
}
