#pragma once

#include <cstdint>
#include <string>

namespace hallforge {

constexpr uint64_t kDefaultSeed = 20261016;

struct RunConfig {
    std::string command;
    std::string quiver;
    int max_dim = 4;
    int window = 20;
    std::string format = "table";
    uint64_t seed = kDefaultSeed;

    std::string target;  // equivariant-dt, comma separated
    std::string lhs, rhs;      // mul
    std::string coha, cohm;    // act
    std::string property;      // check
    int instances = 200;
    std::string type;          // dilog-check, pbw-check: "A<n>"
    std::string orient;
    std::string duality = "orth";
    std::string mults;         // thom
    std::string pbw_kind;      // coha | cohm
    int node_dim = 2;
    int degree = 3;
};

struct RunResult {
    int status = 0;  // 0 pass, 1 property failure, 2 input error
    std::string document;
};

RunResult dispatch(const RunConfig& cfg);

}  // namespace hallforge
