#pragma once

#include "kmso21/irrep.hpp"
#include "kmso21/so21.hpp"

#include "json.hpp"

#include <optional>
#include <string>
#include <vector>

namespace kmso21 {

struct DiscreteEntry {
    Q s;
    long mult = 0;
    RootVector witness;
    bool mirrored = false;  // read off from a J+ kernel at -witness through omega
    std::vector<std::string> vectors;
};

struct PrincipalEntry {
    Q p;
    std::optional<Q> omega;       // absent when the strip block is not diagonal over Q
    std::vector<double> omega_numeric;
    std::string charpoly;         // only for non-rational blocks
    std::string block;
    long mult = 0;
    int window = 0;
    bool window_ok = true;
    RootVector witness;
    std::vector<RootVector> string;  // roots of the string inside the window
};

struct ComplementaryFlag {
    Q p;
    double omega = 0;
    std::string omega_exact;
    RootVector witness;
};

struct AccountingRow {
    RootVector beta;
    long mult = 0;
    long discrete = 0;
    long principal = 0;
    long trivial = 0;
    long adjoint = 0;
    bool checked = true;
    bool ok() const { return !checked || mult == discrete + principal + trivial + adjoint; }
};

struct AdjointReport {
    So21Triple triple;
    int64_t cutoff = 0;
    int window = 0;
    long singlets = 0;
    bool adjoint_marker = false;
    std::vector<std::string> singlet_vectors;
    std::vector<DiscreteEntry> discrete;
    std::vector<PrincipalEntry> principal;
    std::vector<ComplementaryFlag> complementary;
    std::vector<AccountingRow> accounting;
    std::vector<std::string> diagnostics;
    int64_t strip_height_bound = 0;

    long principal_count() const;
    long discrete_count(const Q& s) const;  // lowest weight copies with parameter s
    bool accounting_ok() const;
    nlohmann::json to_json() const;
    std::string to_text() const;
};

AdjointReport decompose_adjoint(const So21Triple& t, int64_t cutoff, int window, Exec exec = Exec::parallel);

// |height| bound for roots in the strip 0 <= nu < 1 of a timelike alpha.
int64_t strip_height_bound(const CartanMatrix& a, const RootVector& alpha);

struct RealStringReport {
    RootVector base;  // root with minimal alpha coefficient in the string
    std::vector<RootVector> roots;
    std::vector<long> mults;
    FiniteMultiset decomposition;
    bool partial = false;
    std::string diagnostic;
};

struct RealRootReport {
    So21Triple triple;
    int64_t cutoff = 0;
    FiniteMultiset cartan;
    std::vector<std::string> cartan_singlets;
    std::vector<RealStringReport> strings;
    nlohmann::json to_json() const;
    std::string to_text() const;
};

RealRootReport decompose_real_root(const So21Triple& t, int64_t cutoff);

// Heads of V(0) (or any V(m)) inside a root space: kernel of both ad E and ad F.
std::vector<LieElement> real_root_invariants(const So21Triple& t, const RootVector& beta);

struct ConjectureItem {
    RootVector alpha;
    std::string word;
    long principal = 0;
    long complementary = 0;
    std::vector<std::string> omegas;
    std::vector<std::string> diagnostics;
};

struct ConjectureReport {
    int64_t cutoff = 0;
    int window = 0;
    std::vector<ConjectureItem> items;
    bool holds() const;
    nlohmann::json to_json() const;
    std::string to_text() const;
};

// Timelike positive roots up to max_height with their first basis word.
std::vector<std::pair<RootVector, Word>> timelike_roots(const AlgebraContext& ctx, int64_t max_height);

ConjectureReport conjecture_scan(const AlgebraContext& ctx, const std::vector<std::pair<RootVector, Word>>& roots,
                                 int64_t cutoff, int window, Exec exec = Exec::parallel);

}  // namespace kmso21
