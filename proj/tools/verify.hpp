#pragma once

#include "kmso21/algebra.hpp"

#include "json.hpp"

#include <string>
#include <vector>

namespace kmso21::cli {

struct Check {
    std::string section;
    std::string name;
    std::string expected;
    std::string got;
    bool pass = false;
};

// Section keys: real, alpha11, weights, alpha23, principal, conjecture.
const std::vector<std::string>& verify_sections();
std::vector<std::string> default_verify_sections();

std::vector<Check> run_verify(const AlgebraContext& ctx, const std::vector<std::string>& sections, int64_t cutoff, int window);
nlohmann::json checks_json(const std::vector<Check>& checks);
std::string checks_text(const std::vector<Check>& checks);

}  // namespace kmso21::cli
