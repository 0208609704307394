#pragma once

// Ensemble identification shared by samplers, exact formulas, and the CLI.

#include <stdexcept>
#include <string>

namespace rho {

enum class Ensemble { HS, Induced, Bures };

inline const char* ensemble_name(Ensemble e) {
    switch (e) {
        case Ensemble::HS: return "hs";
        case Ensemble::Induced: return "induced";
        case Ensemble::Bures: return "bures";
    }
    throw std::logic_error("ensemble_name: bad enum");
}

// (kind, n, k) with the interchange rule recorded: exact spectral formulas
// require k >= n, and for k < n they apply verbatim to the nonzero part of
// the spectrum with the roles of n and k exchanged.  The sampler keeps the
// physical dimension n either way; formula_n/formula_k expose the exchanged
// pair.
struct EnsembleSpec {
    Ensemble kind;
    int n;
    int k;
    bool swapped;  // true iff k < n was supplied

    static EnsembleSpec hs(int n) {
        require_positive(n, "n");
        return {Ensemble::HS, n, n, false};
    }

    static EnsembleSpec induced(int n, int k) {
        require_positive(n, "n");
        require_positive(k, "k");
        return {Ensemble::Induced, n, k, k < n};
    }

    static EnsembleSpec bures(int n) {
        require_positive(n, "n");
        return {Ensemble::Bures, n, n, false};
    }

    int formula_n() const { return swapped ? k : n; }
    int formula_k() const { return swapped ? n : k; }

private:
    static void require_positive(int v, const char* name) {
        if (v < 1) throw std::invalid_argument(std::string(name) + " must be >= 1");
    }
};

} // namespace rho
