#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "k3lattice/lattice.hpp"

namespace k3lattice::cli {

using json = nlohmann::json;

enum ExitCode : int { kOk = 0, kInternal = 1, kInputError = 2, kDomainError = 3, kInconsistent = 4 };

// {"gram": [["a", ...], ...], "name"?, "provenance"?: {"hyperbolic_summands": "k", ...}}
QuadLattice parse_lattice(const json& doc);
json lattice_document(const QuadLattice& lattice, const std::string& name = "");

Integer parse_integer(const json& value);
Rational parse_rational(const json& value);
IntVector parse_int_vector(const json& value);

// Named lattices: U, E8, lambda (n), cubic, fermat, rank1 (n as the value).
json cmd_lattice(const std::string& name, long n);
json cmd_disc(const json& doc);
json cmd_bb_recover(const json& input);

struct DensityOptions {
    bool fermat = false;
    std::vector<std::int64_t> inert;
    std::vector<std::int64_t> union_primes;
    std::uint64_t bound = 1000000;
};
json cmd_density(const DensityOptions& options);

json cmd_newton(const json& input);
json cmd_artin(const json& doc, const Integer& p);
json cmd_mukai(const json& input);
json cmd_jordan(const json& doc, const Integer& p, std::optional<unsigned long> precision);
json cmd_enumerate(const json& doc, const Integer& norm);
json cmd_pointed(const json& input);

// Maps the active exception to an exit code; call from a catch block.
int exit_code_for_current_exception(std::string& message);

// Full command line; reads JSON from `in` for commands that take a document.
int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

} // namespace k3lattice::cli
