#include "shellvqe/interaction.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <map>
#include <sstream>

namespace shellvqe {

ParseError::ParseError(const std::string& msg, int line_no)
    : std::runtime_error(msg + " (line " + std::to_string(line_no) + ")"), line(line_no) {}

ValidationError::ValidationError(const std::string& msg) : std::runtime_error(msg) {}

namespace {
std::string strip_comment(const std::string& line) {
    auto pos = line.find('#');
    return pos == std::string::npos ? line : line.substr(0, pos);
}

int orbital_index(const ValenceSpace& space, const std::string& label, int line) {
    for (std::size_t i = 0; i < space.orbitals.size(); ++i)
        if (space.orbitals[i].label == label) return static_cast<int>(i);
    throw ParseError("orbital '" + label + "' not in valence space", line);
}

bool triangle_ok(int ja2, int jb2, int J) {
    return 2 * J >= std::abs(ja2 - jb2) && 2 * J <= ja2 + jb2;
}
}  // namespace

Interaction parse_interaction_stream(std::istream& in, const ValenceSpace& space,
                                     const std::string& origin) {
    Interaction out;
    out.spe.assign(space.orbitals.size(), 0.0);
    std::vector<bool> spe_seen(space.orbitals.size(), false);
    std::vector<Orbital> declared;
    std::map<std::array<int, 6>, int> tbme_seen;  // canonical key -> line

    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::istringstream ls(strip_comment(raw));
        std::string tag;
        if (!(ls >> tag)) continue;
        if (tag == "MODE") {
            std::string mode;
            if (!(ls >> mode)) throw ParseError("MODE needs a value", line_no);
            if (mode == "normalized")
                out.normalized = true;
            else if (mode == "unnormalized")
                out.normalized = false;
            else
                throw ParseError("MODE must be normalized|unnormalized", line_no);
        } else if (tag == "ORB") {
            int n, l, j2;
            if (!(ls >> n >> l >> j2)) throw ParseError("ORB needs 'n l 2j'", line_no);
            declared.push_back({n, l, j2, make_orbital_label(n, l, j2)});
        } else if (tag == "SPE") {
            std::string label;
            double eps;
            if (!(ls >> label >> eps)) throw ParseError("SPE needs 'orbital ε'", line_no);
            int idx = orbital_index(space, label, line_no);
            if (spe_seen[idx]) throw ParseError("duplicate SPE for " + label, line_no);
            spe_seen[idx] = true;
            out.spe[idx] = eps;
        } else if (tag == "TBME") {
            std::string la, lb, lc, ld;
            int J, T;
            double V;
            if (!(ls >> la >> lb >> lc >> ld >> J >> T >> V))
                throw ParseError("TBME needs 'a b c d J T V'", line_no);
            CoupledTBME e;
            e.a = orbital_index(space, la, line_no);
            e.b = orbital_index(space, lb, line_no);
            e.c = orbital_index(space, lc, line_no);
            e.d = orbital_index(space, ld, line_no);
            e.J = J;
            e.T = T;
            if (T != 0 && T != 1) throw ParseError("T must be 0 or 1", line_no);
            if (!triangle_ok(space.orbitals[e.a].j2, space.orbitals[e.b].j2, J) ||
                !triangle_ok(space.orbitals[e.c].j2, space.orbitals[e.d].j2, J))
                throw ParseError("J violates a triangle rule", line_no);
            // identical-orbital pairs only exist for (J+T) odd
            if ((e.a == e.b || e.c == e.d) && (J + T) % 2 == 0)
                throw ParseError("Pauli-forbidden identical-orbital pair (need J+T odd)",
                                 line_no);
            e.V = V;
            // canonical key: pair-sorted, bra/ket-sorted
            std::array<int, 2> ab{std::min(e.a, e.b), std::max(e.a, e.b)};
            std::array<int, 2> cd{std::min(e.c, e.d), std::max(e.c, e.d)};
            if (cd < ab) std::swap(ab, cd);
            std::array<int, 6> key{ab[0], ab[1], cd[0], cd[1], J, T};
            auto [it, inserted] = tbme_seen.emplace(key, line_no);
            if (!inserted)
                throw ParseError("duplicate TBME (same channel first given on line " +
                                     std::to_string(it->second) + ")",
                                 line_no);
            out.tbme.push_back(e);
        } else {
            throw ParseError("unknown record '" + tag + "' in " + origin, line_no);
        }
    }
    if (!declared.empty()) {
        if (declared.size() != space.orbitals.size())
            throw ValidationError("orbital count mismatch between file and space");
        for (std::size_t i = 0; i < declared.size(); ++i) {
            const Orbital &f = declared[i], &s = space.orbitals[i];
            if (f.n != s.n || f.l != s.l || f.j2 != s.j2)
                throw ValidationError("orbital " + std::to_string(i) +
                                      " mismatch: file has " + f.label + ", space has " +
                                      s.label);
        }
    }
    return out;
}

Interaction parse_interaction(const std::string& path, const ValenceSpace& space) {
    std::ifstream f(path);
    if (!f) throw ValidationError("cannot open interaction file: " + path);
    return parse_interaction_stream(f, space, path);
}

std::vector<Orbital> parse_orbital_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ValidationError("cannot open orbital file: " + path);
    std::vector<Orbital> orbs;
    std::string raw;
    int line_no = 0;
    while (std::getline(f, raw)) {
        ++line_no;
        std::istringstream ls(strip_comment(raw));
        int n, l, j2;
        if (!(ls >> n)) continue;
        if (!(ls >> l >> j2)) throw ParseError("orbital line needs 'n l 2j'", line_no);
        orbs.push_back({n, l, j2, make_orbital_label(n, l, j2)});
    }
    return orbs;
}

}  // namespace shellvqe
