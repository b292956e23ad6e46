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

#include "voxelrf/dataio.hpp"
#include "voxelrf/trainer.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace voxelrf
{
    enum class ValueType
    {
        integer,
        real,
        string,
        boolean,
        vec3,     // "x,y,z" on the command line
        int_list, // "a,b,c"
        json      // config file only
    };

    struct ConfigKey
    {
        std::string key; // dotted: section.name
        ValueType type;
        nlohmann::json default_value; // null: unset (required, or resolved elsewhere)
        std::vector<std::string> required_by;
    };

    const std::vector<ConfigKey> &config_schema();

    // Flat map of dotted keys to values, pre-filled with schema defaults.
    class RunConfig
    {
    public:
        RunConfig();

        bool has(const std::string &key) const;           // set and not null
        const nlohmann::json &at(const std::string &key) const;
        void set(const std::string &key, nlohmann::json value);

        std::string str(const std::string &key) const;
        double real(const std::string &key) const;
        std::int64_t integer(const std::string &key) const;
        bool boolean(const std::string &key) const;
        Vec3 vec3(const std::string &key) const;

        // Keys of one section, as a nested object (for checkpoint config echo).
        nlohmann::json section(const std::string &name) const;

    private:
        nlohmann::json values_; // flat
    };

    // Converts "--name value" / "--name=value" / bare "--flag" tokens into dotted keys.
    // Undotted names resolve against the command's section, with '-' read as '_'.
    std::vector<std::pair<std::string, std::string>> parse_flag_args(const std::string &command,
                                                                     const std::vector<std::string> &args);

    // Layers schema defaults, an optional JSON config file, then flag overrides. Unknown keys and
    // every missing required key are reported in one ConfigError.
    RunConfig build_run_config(const std::string &command, const std::optional<std::filesystem::path> &config_file,
                               const std::vector<std::string> &args);

    SyntheticScene scene_from_config(const RunConfig &config);

    // Profile defaults ("desk" or "paper") overlaid with any explicitly set train.* keys.
    TrainConfig train_config_from(const RunConfig &config);
}
