#pragma once

namespace shellvqe {

/// Condon-Shortley Clebsch-Gordan coefficient ⟨j1 m1 j2 m2 | J M⟩ with all
/// angular momenta passed doubled (2j, 2m).  Returns 0 when M ≠ m1+m2 or the
/// triangle rule fails; throws std::domain_error when an argument pair has
/// inconsistent parity (j and m must both be integer or both half-integer).
double clebsch_gordan(int j1_2, int m1_2, int j2_2, int m2_2, int J2, int M2);

}  // namespace shellvqe
