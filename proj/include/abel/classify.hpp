#ifndef ABEL_CLASSIFY_HPP
#define ABEL_CLASSIFY_HPP

#include <optional>
#include <string>

#include "abel/basis.hpp"

namespace abel {

enum class SignKind { Plus, Minus };

inline const char* to_string(SignKind s) { return s == SignKind::Plus ? "+" : "-"; }

struct D1Witness {
    double lambda = 0.0, mu = 0.0; // unit norm, first non-zero component positive
    SignKind sign = SignKind::Plus; // Plus: lambda A + mu B >= 0; Minus: <= 0
    double certified_min = 0.0;     // min of sign-adjusted combination over the scan
};

struct D2Sign {
    SignKind sign = SignKind::Plus; // sign of A B' - A' B on [0, T)
    double min_abs = 0.0;
};

enum class Verdict { D1Only, D2Only, Both, Neither };

inline const char* to_string(Verdict v) {
    switch (v) {
    case Verdict::D1Only: return "D1Only";
    case Verdict::D2Only: return "D2Only";
    case Verdict::Both: return "Both";
    case Verdict::Neither: return "Neither";
    }
    return "?";
}

struct ClassificationResult {
    std::optional<D1Witness> d1;
    std::optional<D2Sign> d2;
    Verdict verdict = Verdict::Neither;
    bool in_L1 = false;
    bool in_LH = false;
    // When the one-signed quantity A'B - AB' is negative, x -> -x restores
    // the orientation assumed in the membership test; cycle and Lyapunov
    // statements are read through this flip.
    bool flipped_for_H = false;
};

/// Sign of A B' - A' B over [0, T - delta]. Returns nullopt on a sign change
/// or an identically-zero (proportional) pair; throws indeterminate_error
/// when values enter the tolerance band without a sign change.
std::optional<D2Sign> d2_sign(const AbelEquation& eq, int grid = 2048);

/// Two-stage search for a one-signed combination lambda A + mu B:
/// constructive candidates at the zeros of A B' - A' B first, then a global
/// maximin over unit directions. nullopt when no direction certifies.
std::optional<D1Witness> d1_witness(const AbelEquation& eq, int grid = 2048);

ClassificationResult classify(const AbelEquation& eq, int grid = 2048);

struct ComboRange {
    double min = 0.0, max = 0.0;
};

/// Refined extrema of lambda A + mu B over [0, T - delta]; shared by the
/// witness search and by report tooling.
ComboRange combo_range(const AbelEquation& eq, double lambda, double mu, int grid = 4096);

} // namespace abel

#endif
