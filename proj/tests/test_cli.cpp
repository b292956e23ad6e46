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

// Drives the built voxelrf executable end to end.

#include "fixtures.hpp"
#include "voxelrf/dataio.hpp"

#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

using namespace voxelrf;
namespace fs = std::filesystem;

namespace
{
    int run(const std::string &args, const fs::path &cwd)
    {
        const std::string cmd = "cd '" + cwd.string() + "' && '" VOXELRF_CLI_PATH "' " + args + " >stdout.txt 2>stderr.txt";
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

    bool same_tree(const fs::path &a, const fs::path &b)
    {
        std::vector<fs::path> fa, fb;
        for (const auto &e : fs::recursive_directory_iterator(a))
            if (e.is_regular_file())
                fa.push_back(fs::relative(e.path(), a));
        for (const auto &e : fs::recursive_directory_iterator(b))
            if (e.is_regular_file())
                fb.push_back(fs::relative(e.path(), b));
        std::sort(fa.begin(), fa.end());
        std::sort(fb.begin(), fb.end());
        if (fa != fb || fa.empty())
            return false;
        for (const fs::path &f : fa)
            if (slurp(a / f) != slurp(b / f))
                return false;
        return true;
    }
}

TEST_CASE("cli: usage errors exit 2")
{
    testing::ScratchDir dir("cli-usage");
    CHECK(run("", dir.path()) == 2);
    CHECK(run("synth --n-tx 4", dir.path()) == 2);
    CHECK(slurp(dir.path() / "stderr.txt").find("synth.out") != std::string::npos);
    CHECK(run("synth --out d --no-such-option 3", dir.path()) == 2);
    CHECK(run("train --profile desk", dir.path()) == 2);
    CHECK(run("--help", dir.path()) == 0);
    CHECK(run("eval --help", dir.path()) == 0);
}

TEST_CASE("cli: synth is deterministic")
{
    testing::ScratchDir dir("cli-synth");
    REQUIRE(run("synth --scene demo --n-tx 6 --seed 7 --fine-step 0.03 --out a", dir.path()) == 0);
    REQUIRE(run("synth --scene demo --n-tx 6 --seed 7 --fine-step 0.03 --out b", dir.path()) == 0);
    CHECK(same_tree(dir.path() / "a", dir.path() / "b"));
    const Dataset ds = load_dataset(dir.path() / "a");
    CHECK(ds.records.size() == 6);
    CHECK(ds.geometry.res == SpectrumResolution{36, 9});
}

TEST_CASE("cli: config files and flag overrides")
{
    testing::ScratchDir dir("cli-config");
    std::ofstream(dir.path() / "run.json")
        << R"({"scene": {"spectrum_res": [12, 4], "tx_modulation": 0.0}, "synth": {"n_tx": 3, "out": "cfgdata"}})";
    REQUIRE(run("synth --config run.json --fine-step 0.05", dir.path()) == 0);
    const Dataset ds = load_dataset(dir.path() / "cfgdata");
    CHECK(ds.records.size() == 3);
    CHECK(ds.geometry.res == SpectrumResolution{12, 4});
    CHECK(ds.generator.at("tx_modulation") == 0.0);

    std::ofstream(dir.path() / "bad.json") << R"({"synth": {"n_tx": 3, "out": "x", "typo": 1}})";
    CHECK(run("synth --config bad.json", dir.path()) == 2);
    CHECK(run("synth --config absent.json --out x", dir.path()) == 3);
}

TEST_CASE("cli: train, infer and eval")
{
    testing::ScratchDir dir("cli-pipeline");
    const fs::path d = dir.path();
    REQUIRE(run("synth --n-tx 10 --seed 3 --fine-step 0.03 --out data", d) == 0);
    REQUIRE(run("train --data data --checkpoint model.vxck --log log.csv --final-dims 8 --feature-dim 4 "
                "--hidden-width 16 --batch-rays 32 --total-iters 40 --log-interval 10",
                d) == 0);
    CHECK(fs::exists(d / "model.vxck"));
    const std::string log = slurp(d / "log.csv");
    CHECK(log.rfind("iter,spectrum_loss,bg_loss,total,lr_grid,lr_mlp\n", 0) == 0);
    CHECK(std::count(log.begin(), log.end(), '\n') == 1 + 5);

    REQUIRE(run("infer --checkpoint model.vxck --tx 0.1,0.2,0.3 --out s.vxrf", d) == 0);
    const SpatialSpectrum s = read_spectrum(d / "s.vxrf");
    CHECK(s.res == SpectrumResolution{36, 9});
    CHECK(slurp(d / "stderr.txt").find(" s ") != std::string::npos);

    REQUIRE(run("eval --checkpoint model.vxck --data data --out ev --rssi", d) == 0);
    const std::string ssim = slurp(d / "ev/ssim.csv");
    CHECK(ssim.rfind("tx_index,ssim\n", 0) == 0);
    CHECK(std::count(ssim.begin(), ssim.end(), '\n') == 1 + 2);
    CHECK(slurp(d / "ev/rssi_error.csv").rfind("record_index,rssi_error_db\n", 0) == 0);
    CHECK(slurp(d / "ev/summary.csv").find("ssim,2,") != std::string::npos);
    CHECK(fs::exists(d / "ev/ssim_cdf.csv"));

    // A different split seed picks different held-out records.
    REQUIRE(run("eval --checkpoint model.vxck --data data --out ev2 --split-seed 5", d) == 0);
    CHECK(slurp(d / "ev2/ssim.csv") != ssim);
    REQUIRE(run("eval --checkpoint model.vxck --data data --out ev3", d) == 0);
    CHECK(slurp(d / "ev3/ssim.csv") == ssim);
}

TEST_CASE("cli: malformed inputs")
{
    testing::ScratchDir dir("cli-bad");
    std::ofstream(dir.path() / "junk.vxck") << "not a checkpoint";
    CHECK(run("infer --checkpoint junk.vxck --tx 0,0,0 --out s.vxrf", dir.path()) == 4);
    CHECK(slurp(dir.path() / "stderr.txt").find("magic") != std::string::npos);
    CHECK(run("infer --checkpoint missing.vxck --tx 0,0,0 --out s.vxrf", dir.path()) == 3);
    CHECK(run("infer --checkpoint junk.vxck --tx 0,0 --out s.vxrf", dir.path()) == 2);
    CHECK(run("eval --checkpoint junk.vxck --data nowhere --out ev", dir.path()) == 4);
}
