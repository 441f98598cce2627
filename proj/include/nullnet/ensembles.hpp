#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "nullnet/graph.hpp"

namespace nullnet {

enum class ModelKind { DRG, DCM, RCM };

const char* model_name(ModelKind kind);
ModelKind model_from_name(const std::string& name);

/// Probabilities of the four states of the ordered dyad (i,j).
/// They sum to 1; p_out(i,j) == p_in(j,i), p_both and p_empty are symmetric.
struct DyadProbabilities {
    double p_out;    // i->j only
    double p_in;     // j->i only
    double p_both;   // reciprocated
    double p_empty;  // no link
};

struct FitOptions {
    double tol = 1e-8;    // max relative constraint error
    int max_iter = 10000;
};

/// Thrown when a model cannot be fitted at all (e.g. DCM on a complete graph,
/// where every likelihood parameter diverges).
struct DegenerateModelError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Maximum-entropy ensemble fitted to one graph. Parameters are the
/// exponentiated Lagrange multipliers: x ~ out-constraints, y ~ in-constraints,
/// z ~ reciprocated constraints (RCM only). For the DRG the single scalar is
/// the link density p (x then holds p/(1-p) when finite).
struct FittedEnsemble {
    ModelKind kind = ModelKind::DRG;
    int n = 0;
    std::vector<double> x;
    std::vector<double> y;
    std::vector<double> z;
    double p = 0.0;           // DRG link density
    double residual = 0.0;    // max relative constraint error achieved
    int iterations = 0;
    bool converged = true;
    bool degenerate = false;       // DRG with p in {0,1}
    bool near_saturation = false;  // some single-link probability > 1 - 1e-9
};

FittedEnsemble fit_drg(const DirectedGraph& g);
FittedEnsemble fit_dcm(const DirectedGraph& g, FitOptions opts = {});
FittedEnsemble fit_rcm(const DirectedGraph& g, FitOptions opts = {});

DyadProbabilities dyad_probabilities(const FittedEnsemble& e, int i, int j);

/// Log-probability of the observed graph under the fitted ensemble;
/// -infinity when an observed dyad state has model probability 0.
double log_likelihood(const FittedEnsemble& e, const DirectedGraph& g);

}  // namespace nullnet
