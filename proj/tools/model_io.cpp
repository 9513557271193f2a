#include "model_io.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace poolrisk::cli {

namespace {

using nlohmann::json;

std::vector<double> number_array(const json& j, const std::string& field) {
    if (!j.contains(field) || !j[field].is_array())
        throw std::invalid_argument("field '" + field + "' must be an array of numbers");
    std::vector<double> out;
    out.reserve(j[field].size());
    for (const auto& x : j[field]) {
        if (!x.is_number())
            throw std::invalid_argument("field '" + field + "' must contain only numbers");
        out.push_back(x.get<double>());
    }
    return out;
}

double number_field(const json& j, const std::string& field) {
    if (!j.contains(field) || !j[field].is_number())
        throw std::invalid_argument("field '" + field + "' must be a number");
    return j[field].get<double>();
}

LatticeDistribution parse_lattice(const json& j) {
    return LatticeDistribution(number_field(j, "origin"), number_field(j, "step"),
                               number_array(j, "probs"));
}

AmbiguityModel parse_ambiguity(const json& j) {
    if (!j.contains("models") || !j["models"].is_array() || j["models"].empty())
        throw std::invalid_argument("field 'models' must be a nonempty array");
    std::vector<WeightedModel> models;
    for (std::size_t i = 0; i < j["models"].size(); ++i) {
        const json& entry = j["models"][i];
        try {
            if (!entry.contains("law"))
                throw std::invalid_argument("missing field 'law'");
            WeightedModel m{parse_lattice(entry["law"]),
                            entry.value("alpha", 0.0),
                            entry.value("beta", 1.0)};
            models.push_back(std::move(m));
        } catch (const std::invalid_argument& err) {
            throw std::invalid_argument("models[" + std::to_string(i) + "]: " + err.what());
        }
    }
    return AmbiguityModel(std::move(models));
}

SpaceModel parse_space(const json& j) {
    if (!j.contains("weights") || !j["weights"].is_array() || j["weights"].empty())
        throw std::invalid_argument("field 'weights' must be a nonempty array of rows");
    std::vector<std::vector<double>> weights;
    for (std::size_t i = 0; i < j["weights"].size(); ++i) {
        json row_holder;
        row_holder["row"] = j["weights"][i];
        weights.push_back(number_array(row_holder, "row"));
    }
    std::vector<std::string> atoms;
    if (j.contains("atoms")) {
        for (const auto& a : j["atoms"]) atoms.push_back(a.get<std::string>());
    }
    SpaceModel out{SampleSpace(std::move(atoms), std::move(weights),
                               number_array(j, "endowment")),
                   {}, {}};
    if (j.contains("alphas")) out.alphas = number_array(j, "alphas");
    if (j.contains("betas")) out.betas = number_array(j, "betas");
    if (!out.alphas.empty() && out.alphas.size() != out.space.n_models())
        throw std::invalid_argument("field 'alphas' length does not match the weight rows");
    if (!out.betas.empty() && out.betas.size() != out.space.n_models())
        throw std::invalid_argument("field 'betas' length does not match the weight rows");
    return out;
}

}  // namespace

ParsedModel parse_model_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open model file '" + path + "'");

    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& err) {
        throw std::invalid_argument("parse error in '" + path + "': " + err.what());
    }

    if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
        throw std::invalid_argument("model file '" + path + "' needs a string field 'type'");
    const std::string type = j["type"].get<std::string>();
    try {
        if (type == "lattice") return parse_lattice(j);
        if (type == "ambiguity") return parse_ambiguity(j);
        if (type == "space") return parse_space(j);
    } catch (const std::invalid_argument& err) {
        throw std::invalid_argument(std::string("invalid model in '") + path + "': " + err.what());
    }
    throw std::invalid_argument("unknown model type '" + type + "' in '" + path +
                                "' (expected lattice, ambiguity or space)");
}

LatticeDistribution expect_lattice(ParsedModel m, const std::string& path) {
    if (auto* d = std::get_if<LatticeDistribution>(&m)) return std::move(*d);
    throw std::invalid_argument("'" + path + "' does not hold a lattice model");
}

AmbiguityModel expect_ambiguity(ParsedModel m, const std::string& path) {
    if (auto* a = std::get_if<AmbiguityModel>(&m)) return std::move(*a);
    throw std::invalid_argument("'" + path + "' does not hold an ambiguity model");
}

SpaceModel expect_space(ParsedModel m, const std::string& path) {
    if (auto* s = std::get_if<SpaceModel>(&m)) return std::move(*s);
    throw std::invalid_argument("'" + path + "' does not hold a sample space");
}

}  // namespace poolrisk::cli
