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

#include "voxelrf/run_config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace voxelrf
{
    using nlohmann::json;

    const std::vector<ConfigKey> &config_schema()
    {
        using V = ValueType;
        static const std::vector<ConfigKey> schema = {
            {"scene.name", V::string, "demo", {}},
            {"scene.tx_modulation", V::real, 0.5, {}},
            {"scene.spectrum_res", V::int_list, json::array({36, 9}), {}},
            {"scene.rx_position", V::vec3, nullptr, {}},
            {"scene.bbox_min", V::vec3, nullptr, {}},
            {"scene.bbox_max", V::vec3, nullptr, {}},
            {"scene.blobs", V::json, nullptr, {}},

            {"synth.n_tx", V::integer, 128, {}},
            {"synth.seed", V::integer, 0, {}},
            {"synth.out", V::string, nullptr, {"synth"}},
            {"synth.fine_step", V::real, 0.0, {}},
            {"synth.rssi_noise_db", V::real, 1.0, {}},
            {"synth.rssi_reference_dbm", V::real, -40.0, {}},

            {"train.data", V::string, nullptr, {"train"}},
            {"train.checkpoint", V::string, nullptr, {"train"}},
            {"train.log", V::string, "", {}},
            {"train.split_seed", V::integer, 0, {}},
            {"train.train_fraction", V::real, 0.8, {}},
            {"train.profile", V::string, "desk", {}},
            {"train.final_dims", V::int_list, nullptr, {}},
            {"train.feature_dim", V::integer, nullptr, {}},
            {"train.hidden_width", V::integer, nullptr, {}},
            {"train.position_levels", V::integer, nullptr, {}},
            {"train.direction_levels", V::integer, nullptr, {}},
            {"train.density_bias", V::real, nullptr, {}},
            {"train.deformation", V::boolean, nullptr, {}},
            {"train.stages", V::integer, nullptr, {}},
            {"train.upsample_iters", V::int_list, nullptr, {}},
            {"train.total_iters", V::integer, nullptr, {}},
            {"train.batch_rays", V::integer, nullptr, {}},
            {"train.lr_grid", V::real, nullptr, {}},
            {"train.lr_mlp", V::real, nullptr, {}},
            {"train.lr_decay_target_fraction", V::real, nullptr, {}},
            {"train.skip_threshold", V::real, nullptr, {}},
            {"train.lambda_bg", V::real, nullptr, {}},
            {"train.step", V::real, nullptr, {}},
            {"train.seed", V::integer, nullptr, {}},
            {"train.log_interval", V::integer, nullptr, {}},

            {"infer.checkpoint", V::string, nullptr, {"infer"}},
            {"infer.tx", V::vec3, nullptr, {"infer"}},
            {"infer.out", V::string, nullptr, {"infer"}},
            {"infer.skip_threshold", V::real, 1e-4, {}},

            {"eval.checkpoint", V::string, nullptr, {"eval"}},
            {"eval.data", V::string, nullptr, {"eval"}},
            {"eval.out", V::string, nullptr, {"eval"}},
            {"eval.split_seed", V::integer, 0, {}},
            {"eval.train_fraction", V::real, 0.8, {}},
            {"eval.rssi", V::boolean, false, {}},
            {"eval.skip_threshold", V::real, 1e-4, {}},
        };
        return schema;
    }

    namespace
    {
        const ConfigKey *find_key(const std::string &key)
        {
            for (const auto &k : config_schema())
                if (k.key == key)
                    return &k;
            return nullptr;
        }

        std::vector<std::string> split_commas(const std::string &s)
        {
            std::vector<std::string> out;
            std::stringstream ss(s);
            std::string item;
            while (std::getline(ss, item, ','))
                out.push_back(item);
            return out;
        }

        double parse_real(const std::string &key, const std::string &s)
        {
            char *end = nullptr;
            const double v = std::strtod(s.c_str(), &end);
            if (s.empty() || end != s.c_str() + s.size())
                throw ConfigError(key + ": expected a number, got '" + s + "'");
            return v;
        }

        std::int64_t parse_int(const std::string &key, const std::string &s)
        {
            char *end = nullptr;
            const long long v = std::strtoll(s.c_str(), &end, 10);
            if (s.empty() || end != s.c_str() + s.size())
                throw ConfigError(key + ": expected an integer, got '" + s + "'");
            return v;
        }

        json parse_value(const ConfigKey &k, const std::string &s)
        {
            switch (k.type)
            {
            case ValueType::integer:
                return parse_int(k.key, s);
            case ValueType::real:
                return parse_real(k.key, s);
            case ValueType::string:
                return s;
            case ValueType::boolean:
                if (s == "true" || s == "1" || s == "yes")
                    return true;
                if (s == "false" || s == "0" || s == "no")
                    return false;
                throw ConfigError(k.key + ": expected true/false, got '" + s + "'");
            case ValueType::vec3:
            {
                const auto parts = split_commas(s);
                if (parts.size() != 3)
                    throw ConfigError(k.key + ": expected x,y,z, got '" + s + "'");
                return json::array({parse_real(k.key, parts[0]), parse_real(k.key, parts[1]), parse_real(k.key, parts[2])});
            }
            case ValueType::int_list:
            {
                json arr = json::array();
                for (const auto &p : split_commas(s))
                    arr.push_back(parse_int(k.key, p));
                return arr;
            }
            case ValueType::json:
                break;
            }
            throw ConfigError(k.key + " can only be set from a config file");
        }

        void check_type(const ConfigKey &k, const json &v)
        {
            bool ok = false;
            switch (k.type)
            {
            case ValueType::integer:
                ok = v.is_number_integer();
                break;
            case ValueType::real:
                ok = v.is_number();
                break;
            case ValueType::string:
                ok = v.is_string();
                break;
            case ValueType::boolean:
                ok = v.is_boolean();
                break;
            case ValueType::vec3:
                ok = v.is_array() && v.size() == 3 && std::all_of(v.begin(), v.end(), [](const json &e) { return e.is_number(); });
                break;
            case ValueType::int_list:
                ok = v.is_array() && std::all_of(v.begin(), v.end(), [](const json &e) { return e.is_number_integer(); });
                break;
            case ValueType::json:
                ok = true;
                break;
            }
            if (!ok && !v.is_null())
                throw ConfigError(k.key + ": value " + v.dump() + " has the wrong type");
        }

        void flatten(const json &j, const std::string &prefix, std::vector<std::pair<std::string, json>> &out)
        {
            for (auto it = j.begin(); it != j.end(); ++it)
            {
                const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
                if (it->is_object() && !find_key(key))
                    flatten(*it, key, out);
                else
                    out.emplace_back(key, *it);
            }
        }
    }

    RunConfig::RunConfig()
    {
        values_ = json::object();
        for (const auto &k : config_schema())
            values_[k.key] = k.default_value;
    }

    bool RunConfig::has(const std::string &key) const
    {
        return values_.contains(key) && !values_.at(key).is_null();
    }

    const json &RunConfig::at(const std::string &key) const
    {
        if (!values_.contains(key))
            throw ConfigError("unknown config key '" + key + "'");
        return values_.at(key);
    }

    void RunConfig::set(const std::string &key, json value)
    {
        const ConfigKey *k = find_key(key);
        if (!k)
            throw ConfigError("unknown config key '" + key + "'");
        check_type(*k, value);
        values_[key] = std::move(value);
    }

    std::string RunConfig::str(const std::string &key) const { return at(key).get<std::string>(); }
    double RunConfig::real(const std::string &key) const { return at(key).get<double>(); }
    std::int64_t RunConfig::integer(const std::string &key) const { return at(key).get<std::int64_t>(); }
    bool RunConfig::boolean(const std::string &key) const { return at(key).get<bool>(); }
    Vec3 RunConfig::vec3(const std::string &key) const
    {
        const json &v = at(key);
        return {v[0].get<double>(), v[1].get<double>(), v[2].get<double>()};
    }

    json RunConfig::section(const std::string &name) const
    {
        json out = json::object();
        const std::string prefix = name + ".";
        for (auto it = values_.begin(); it != values_.end(); ++it)
            if (it.key().rfind(prefix, 0) == 0)
                out[it.key().substr(prefix.size())] = it.value();
        return out;
    }

    std::vector<std::pair<std::string, std::string>> parse_flag_args(const std::string &command, const std::vector<std::string> &args)
    {
        std::vector<std::pair<std::string, std::string>> out;
        for (std::size_t i = 0; i < args.size(); ++i)
        {
            const std::string &tok = args[i];
            if (tok.rfind("--", 0) != 0 || tok.size() <= 2)
                throw ConfigError("unexpected argument '" + tok + "'");
            std::string name = tok.substr(2);
            std::string value;
            bool have_value = false;
            if (const auto eq = name.find('='); eq != std::string::npos)
            {
                value = name.substr(eq + 1);
                name = name.substr(0, eq);
                have_value = true;
            }

            std::string key;
            if (name.find('.') != std::string::npos)
                key = name;
            else if (name == "scene")
                key = "scene.name";
            else
            {
                std::replace(name.begin(), name.end(), '-', '_');
                key = command + "." + name;
            }
            const ConfigKey *k = find_key(key);
            if (!k)
                throw ConfigError("unknown option '" + tok + "' for command '" + command + "'");

            if (!have_value)
            {
                const bool next_is_value = i + 1 < args.size() && args[i + 1].rfind("--", 0) != 0;
                if (k->type == ValueType::boolean && !next_is_value)
                    value = "true";
                else if (next_is_value)
                    value = args[++i];
                else
                    throw ConfigError("option '" + tok + "' needs a value");
            }
            out.emplace_back(key, value);
        }
        return out;
    }

    RunConfig build_run_config(const std::string &command, const std::optional<std::filesystem::path> &config_file,
                               const std::vector<std::string> &args)
    {
        RunConfig cfg;
        std::vector<std::string> unknown;

        if (config_file)
        {
            std::ifstream in(*config_file);
            if (!in)
                throw IoError("cannot open config file " + config_file->string());
            json j;
            try
            {
                j = json::parse(in);
            }
            catch (const json::exception &e)
            {
                throw ConfigError("config file " + config_file->string() + ": " + e.what());
            }
            if (!j.is_object())
                throw ConfigError("config file must hold a JSON object");
            std::vector<std::pair<std::string, json>> flat;
            flatten(j, "", flat);
            for (auto &[key, value] : flat)
            {
                if (!find_key(key))
                {
                    unknown.push_back(key);
                    continue;
                }
                cfg.set(key, value);
            }
        }
        if (!unknown.empty())
        {
            std::string msg = "unknown config keys:";
            for (const auto &k : unknown)
                msg += " " + k;
            throw ConfigError(msg);
        }

        for (const auto &[key, value] : parse_flag_args(command, args))
            cfg.set(key, parse_value(*find_key(key), value));

        std::vector<std::string> missing;
        for (const auto &k : config_schema())
            if (std::find(k.required_by.begin(), k.required_by.end(), command) != k.required_by.end() && !cfg.has(k.key))
                missing.push_back(k.key);
        if (!missing.empty())
        {
            std::string msg = "missing required settings:";
            for (const auto &k : missing)
                msg += " " + k;
            throw ConfigError(msg);
        }
        return cfg;
    }

    SyntheticScene scene_from_config(const RunConfig &config)
    {
        const std::string name = config.str("scene.name");
        if (name != "demo")
            throw ConfigError("unknown scene '" + name + "' (available: demo)");
        SyntheticScene scene = demo_scene(config.real("scene.tx_modulation"));
        if (config.has("scene.rx_position"))
            scene.rx = config.vec3("scene.rx_position");
        if (config.has("scene.bbox_min"))
            scene.bbox.min_corner = config.vec3("scene.bbox_min");
        if (config.has("scene.bbox_max"))
            scene.bbox.max_corner = config.vec3("scene.bbox_max");
        if (config.has("scene.blobs"))
        {
            scene.blobs.clear();
            try
            {
                for (const json &b : config.at("scene.blobs"))
                    scene.blobs.push_back({vec3_from_json(b.at("center"), "blob center"), b.at("radius").get<double>(),
                                           b.at("peak_density").get<double>(), b.at("emission").get<double>()});
            }
            catch (const std::exception &e)
            {
                throw ConfigError(std::string("scene.blobs: ") + e.what());
            }
        }
        try
        {
            scene.validate();
        }
        catch (const ContractError &e)
        {
            throw ConfigError(std::string("scene: ") + e.what());
        }
        return scene;
    }

    TrainConfig train_config_from(const RunConfig &config)
    {
        const std::string profile = config.str("train.profile");
        TrainConfig c;
        if (profile == "desk")
            c = TrainConfig::desk();
        else if (profile == "paper")
            c = TrainConfig::paper();
        else
            throw ConfigError("unknown training profile '" + profile + "' (available: desk, paper)");

        auto opt_int = [&](const char *key, auto &field)
        {
            if (config.has(key))
                field = static_cast<std::remove_reference_t<decltype(field)>>(config.integer(key));
        };
        auto opt_real = [&](const char *key, double &field)
        {
            if (config.has(key))
                field = config.real(key);
        };
        if (config.has("train.final_dims"))
        {
            const auto d = config.at("train.final_dims").get<std::vector<int>>();
            if (d.size() == 1)
                c.final_dims = {d[0], d[0], d[0]};
            else if (d.size() == 3)
                c.final_dims = {d[0], d[1], d[2]};
            else
                throw ConfigError("train.final_dims needs 1 or 3 entries");
        }
        opt_int("train.feature_dim", c.feature_dim);
        opt_int("train.hidden_width", c.hidden_width);
        opt_int("train.position_levels", c.position_levels);
        opt_int("train.direction_levels", c.direction_levels);
        opt_real("train.density_bias", c.density_bias);
        if (config.has("train.deformation"))
            c.deformation = config.boolean("train.deformation");
        opt_int("train.stages", c.stages);
        if (config.has("train.upsample_iters"))
            c.upsample_iters = config.at("train.upsample_iters").get<std::vector<std::int64_t>>();
        opt_int("train.total_iters", c.total_iters);
        opt_int("train.batch_rays", c.batch_rays);
        opt_real("train.lr_grid", c.lr_grid);
        opt_real("train.lr_mlp", c.lr_mlp);
        opt_real("train.lr_decay_target_fraction", c.lr_decay_target_fraction);
        opt_real("train.skip_threshold", c.skip_threshold);
        opt_real("train.lambda_bg", c.lambda_bg);
        opt_real("train.step", c.step);
        opt_int("train.seed", c.seed);
        opt_int("train.log_interval", c.log_interval);
        c.validate();
        return c;
    }
}
