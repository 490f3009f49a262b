#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "shellvqe/valence_space.hpp"

namespace shellvqe {

/// One coupled two-body matrix element ⟨ab; JT|V|cd; JT⟩ (orbital indices
/// into ValenceSpace::orbitals).
struct CoupledTBME {
    int a = 0, b = 0, c = 0, d = 0;
    int J = 0;  // total coupled angular momentum
    int T = 0;  // coupled isospin, 0 or 1
    double V = 0;  // MeV
};

struct Interaction {
    std::vector<double> spe;  // per orbital, MeV
    std::vector<CoupledTBME> tbme;
    bool normalized = true;  // √(1+δ_ab) pair normalization convention
};

struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, int line);
    int line;
};
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& msg);
};

/// Parse an interaction file against a valence space.
///
/// Format (UTF-8, '#' comments):
///   ORB  <n> <l> <2j>            one line per orbital, must match the space
///   SPE  <orbital-label> <ε>     single-particle energy in MeV
///   TBME <a> <b> <c> <d> <J> <T> <V>   orbital labels, coupled element
///   MODE normalized|unnormalized       optional, default normalized
///
/// Triangle rules and Pauli constraints are validated; duplicate TBME keys,
/// unknown labels and malformed lines are rejected with the line number.
Interaction parse_interaction(const std::string& path, const ValenceSpace& space);
Interaction parse_interaction_stream(std::istream& in, const ValenceSpace& space,
                                     const std::string& origin);

/// Orbitals from a plain-text orbital file ("n l 2j" per line).
std::vector<Orbital> parse_orbital_file(const std::string& path);

}  // namespace shellvqe
