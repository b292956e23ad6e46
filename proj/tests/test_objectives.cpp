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

#include "gradcheck.hpp"
#include "voxelrf/common.hpp"
#include "voxelrf/objectives.hpp"

#include <doctest.h>

#include <cmath>

using namespace voxelrf;

TEST_CASE("spectrum_mse closed forms")
{
    const std::vector<double> r = {0.1, 0.5, 0.9};
    const LossGradient same = spectrum_mse(r, r);
    CHECK(same.loss == 0.0);
    for (double g : same.gradient)
        CHECK(g == 0.0);

    const std::vector<double> shifted = {0.2, 0.6, 1.0};
    const LossGradient off = spectrum_mse(shifted, r);
    CHECK(off.loss == doctest::Approx(0.01).epsilon(1e-12));
    for (double g : off.gradient)
        CHECK(g == doctest::Approx(2.0 * 0.1 / 3.0).epsilon(1e-12));

    CHECK_THROWS_AS(spectrum_mse(std::vector<double>{}, std::vector<double>{}), ContractError);
    CHECK_THROWS_AS(spectrum_mse(std::vector<double>{0.1}, std::vector<double>{0.1, 0.2}), ContractError);
}

TEST_CASE("spectrum_mse gradient vs finite differences")
{
    Rng rng(31);
    for (int t = 0; t < 20; ++t)
    {
        const int B = 1 + int(rng.below(64));
        std::vector<double> pred(B), target(B);
        for (int i = 0; i < B; ++i)
        {
            pred[i] = rng.uniform(0.0, 1.0);
            target[i] = rng.uniform(0.0, 1.0);
        }
        const LossGradient lg = spectrum_mse(pred, target);
        CHECK(lg.loss >= 0.0);
        for (int i = 0; i < B; ++i)
        {
            const double numeric = testing::central_difference(pred[i], 1e-5, [&](double v) {
                auto p = pred;
                p[i] = v;
                return spectrum_mse(p, target).loss;
            });
            CHECK(testing::gradients_agree(lg.gradient[i], numeric, 1e-6, 1e-12));
        }
    }
}

TEST_CASE("background entropy closed forms")
{
    const LossGradient half = background_entropy(std::vector<double>{0.5});
    CHECK(std::abs(half.loss - std::log(2.0)) < 1e-9);
    CHECK(half.gradient[0] == doctest::Approx(0.0).epsilon(1e-15));

    for (double T : {0.0, 1.0, 1e-9, 1.0 - 1e-9})
    {
        const LossGradient e = background_entropy(std::vector<double>{T});
        CHECK(e.loss < 2e-5);
        CHECK(e.loss >= 0.0);
        CHECK(e.gradient[0] == 0.0);
    }

    // Sum, not mean, over the batch.
    const LossGradient two = background_entropy(std::vector<double>{0.5, 0.5});
    CHECK(two.loss == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-12));
    CHECK(background_entropy(std::vector<double>{}).loss == 0.0);
}

TEST_CASE("background entropy symmetry, sign and gradient")
{
    Rng rng(32);
    for (int t = 0; t < 200; ++t)
    {
        const double T = rng.uniform(2e-6, 1.0 - 2e-6);
        const LossGradient a = background_entropy(std::vector<double>{T});
        const LossGradient b = background_entropy(std::vector<double>{1.0 - T});
        CHECK(a.loss == doctest::Approx(b.loss).epsilon(1e-9));
        CHECK(a.loss >= 0.0);
        CHECK(a.gradient[0] == doctest::Approx(-std::log(T / (1.0 - T))).epsilon(1e-12));
        if (T < 0.5)
            CHECK(a.gradient[0] > 0.0);
        else if (T > 0.5)
            CHECK(a.gradient[0] < 0.0);

        const double h = 1e-6 * std::min(T, 1.0 - T);
        const double numeric = testing::central_difference(T, h, [](double v) {
            return background_entropy(std::vector<double>{v}).loss;
        });
        CHECK(testing::gradients_agree(a.gradient[0], numeric, 1e-6, 1e-10));
    }
}

TEST_CASE("total loss")
{
    CHECK(total_loss(0.25, 3.0, 0.0) == 0.25);
    CHECK(total_loss(0.01, 0.7, 1e-4) == doctest::Approx(0.01007).epsilon(1e-12));
    CHECK(kDefaultLambdaBg == 1e-4);
    CHECK(total_loss(0.01, 0.7) == total_loss(0.01, 0.7, 1e-4));
    CHECK_THROWS_AS(total_loss(0.01, 0.7, -1.0), ContractError);
}
