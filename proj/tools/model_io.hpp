#pragma once

#include <string>
#include <variant>

#include "poolrisk/ambiguity.hpp"
#include "poolrisk/lattice.hpp"
#include "poolrisk/pooling.hpp"

namespace poolrisk::cli {

// A sample-space file may carry per-model penalties for the robust
// pooling criteria.
struct SpaceModel {
    SampleSpace space;
    std::vector<double> alphas;
    std::vector<double> betas;
};

using ParsedModel = std::variant<LatticeDistribution, AmbiguityModel, SpaceModel>;

// Reads a JSON model file. The "type" field selects the schema:
//
//   {"type":"lattice","origin":0,"step":1,"probs":[0.5,0.5]}
//
//   {"type":"ambiguity","models":[
//      {"law":{"origin":-1,"step":1,"probs":[0.5,0,0.5]},"alpha":0,"beta":1},
//      ...]}
//
//   {"type":"space","atoms":["up","down"],"weights":[[0.5,0.5]],
//    "endowment":[2,0],"alphas":[0],"betas":[1]}
//
// alpha/beta/alphas/betas/atoms are optional. Parse failures carry the
// position, invariant failures the offending field.
ParsedModel parse_model_file(const std::string& path);

// Typed accessors; throw std::invalid_argument when the file holds a
// different model kind.
LatticeDistribution expect_lattice(ParsedModel m, const std::string& path);
AmbiguityModel expect_ambiguity(ParsedModel m, const std::string& path);
SpaceModel expect_space(ParsedModel m, const std::string& path);

}  // namespace poolrisk::cli
