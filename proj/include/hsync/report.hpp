#pragma once

#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "hsync/diffusion_operator.hpp"
#include "hsync/dynamics.hpp"
#include "hsync/hypergraph.hpp"
#include "hsync/stability.hpp"
#include "hsync/units.hpp"

// Serialization of analysis results. Vertices and edges are written by
// label / id, never by internal index. Key order is fixed so that output is
// byte-stable for a given input.
namespace hsync::report {

using Json = nlohmann::ordered_json;

/// %.12g with negative zero printed as 0.
std::string format_value(double x);

Json vertex_labels(const Hypergraph& h, std::span<const std::size_t> vertices);
Json edge_ids(const Hypergraph& h, std::span<const std::size_t> edges);

/// [{id, members, generating_set}], ids U0, U1, ...
Json units(const Hypergraph& h, std::span<const Unit> units);

/// {pairs: [{id, first, second, bijection, sigma_preserving}], classes: [{id, units}]}
Json twins(const Hypergraph& h, std::span<const Unit> units, std::span<const TwinPair> pairs,
           const std::vector<std::vector<std::size_t>>& classes);

/// {quotient: <hypergraph JSON>, vertex_map: {v: u}, edge_map: {e: e^}, c_v, c_e}
Json contraction(const Hypergraph& h, const Contraction& c);

/// "index,eigenvalue" rows
std::string spectrum_csv(const Spectrum& spec);
/// one row per vertex: "vertex,z0,z1,..."
std::string eigenvectors_csv(const Hypergraph& h, const Spectrum& spec);

/// Unit and twin eigenpairs that exist on this hypergraph, tagged by cluster
/// id, each with the invariance residual of its eigenvector.
Json analytic_eigenpairs(const Hypergraph& h);

/// "t,<labels>" rows
std::string trajectory_csv(const Hypergraph& h, const Trajectory& traj);

Json sync(const Hypergraph& h, const SyncReport& r);

Json check(const BoundCheck& c);
Json eigenvalue(const EigenvalueEntry& e);
Json stability(const Hypergraph& h, const StabilityReport& r);
Json certificate(const CertificateReport& r);

}  // namespace hsync::report
