#pragma once

#include "defo/catalog.hpp"
#include "defo/report.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace defo {

using NamedDgla = std::pair<std::string, DglaPtr>;
using NamedSc = std::pair<std::string, ScDgla>;
using NamedArtin = std::pair<std::string, ArtinPtr>;

/// abelian, sl2_dg, end_pair.
std::vector<NamedDgla> gauge_dglas();
/// eps2, t3, xy2.
std::vector<NamedArtin> default_artins();

/// MC preservation, action law through BCH, fixed-point criterion and irrelevant-stabiliser fixing.
void gauge_suite(Report& rep, const std::vector<NamedDgla>& dglas, const std::vector<NamedArtin>& artins, int trials, std::uint64_t seed);
/// Random MC elements e^a * z and their residuals.
void mc_suite(Report& rep, const std::vector<NamedDgla>& dglas, const std::vector<NamedArtin>& artins, int trials, std::uint64_t seed);
/// Build-then-decompose and decompose-then-build for homotopies and 2-homotopies.
void decompose_suite(Report& rep, const std::vector<NamedDgla>& dglas, const std::vector<NamedArtin>& artins, int trials, std::uint64_t seed,
                     int poly_degree = 3);
/// Gauges modulo the irrelevant stabiliser against 2-homotopies between the associated paths.
void dictionary_suite(Report& rep, const std::vector<NamedDgla>& dglas, const std::vector<NamedArtin>& artins, int trials, std::uint64_t seed);
/// Integration and Whitney maps between the Thom–Whitney and direct-sum totalisations.
void comparison_suite(Report& rep, const std::vector<NamedSc>& scs, int trials, std::uint64_t seed, int poly_degree = 4);
/// Hypothesis report, Φ₁/Φ₂ on random MC elements and morphisms, π₀ comparison over square-zero algebras.
void descent_suite(Report& rep, const std::vector<NamedSc>& scs, const std::vector<NamedArtin>& artins, int trials, std::uint64_t seed);
/// Cohomology dimensions of a complex, recorded as section data.
void cohomology_section(Report& rep, const std::string& name, const ChainComplexQ& c);

/// LES verification for one morphism; records junctions under `subject`.
PipelineReport pipeline_case(Report& rep, const std::string& subject, const FinMod& f, const FinMod& g, const Mat& alpha, int max_degree);
/// The three canonical A₂ cases plus `random` random instances.
void pipeline_suite(Report& rep, int random, std::uint64_t seed, int max_degree);
/// combined_resolution rows and quasi-isomorphisms; cone_comparison projections.
void appendix_suite(Report& rep, int instances, std::uint64_t seed);

}  // namespace defo
