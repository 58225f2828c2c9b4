#pragma once

#include "kmso21/algebra.hpp"
#include "kmso21/so21.hpp"

#include "json.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace kmso21 {

// Weyl group elements w with 1 <= l(w) <= max_length and their shifts rho - w(rho).
struct RhoShift {
    WeylWord word;
    RootVector shift;
    int sign() const { return word.length() % 2 == 0 ? 1 : -1; }  // (-1)^l(w)
};
std::vector<RhoShift> rho_shifts(const CartanMatrix& a, size_t max_length);
// Same list, cut by the height of the shift instead of the length.
std::vector<RhoShift> rho_shifts_by_height(const CartanMatrix& a, int64_t max_height);

// Dynkin labels (coefficients on fundamental weights).
struct HighestWeight {
    std::vector<int64_t> labels;
    QVec root_coords(const CartanMatrix& a) const;
    std::string str() const;
};
// "fund1", "fund2", ..., "rho", "0" or explicit labels "1,0".
HighestWeight parse_highest_weight(const std::string& text, size_t rank);

class WeightTable {
public:
    // All mu = lambda - k with k >= 0 and height(k) <= max_height.
    WeightTable(const CartanMatrix& a, HighestWeight lambda, int64_t max_height);

    const HighestWeight& lambda() const { return lambda_; }
    int64_t max_height() const { return max_height_; }
    long mult(const RootVector& offset) const;  // offset k = lambda - mu; 0 outside the computed range
    bool in_range(const RootVector& offset) const;
    const std::map<RootVector, long>& entries() const { return mult_; }
    // Weyl orbit of lambda inside the range (offsets), each must have multiplicity 1.
    std::vector<RootVector> weyl_orbit_offsets() const;

    std::string to_csv() const;
    nlohmann::json to_json() const;
    std::string to_svg(const std::string& title) const;

private:
    CartanMatrix a_;
    HighestWeight lambda_;
    int64_t max_height_;
    std::map<RootVector, long> mult_;
};

// Independent multiplicity oracle (Freudenthal). Returns nullopt where the formula degenerates.
class FreudenthalOracle {
public:
    FreudenthalOracle(const AlgebraContext& ctx, HighestWeight lambda, int64_t max_height);
    std::optional<long> mult(const RootVector& offset) const;
    const std::map<RootVector, std::optional<long>>& entries() const { return mult_; }

private:
    std::map<RootVector, std::optional<long>> mult_;
};

struct HWColumn {
    RootVector top;  // offset of the top weight
    Q top_s;         // -nu(top)
    std::vector<long> mults;
    std::vector<long> counts;  // differences
};

struct HWDecomposition {
    HighestWeight lambda;
    So21Triple triple;
    int depth = 0;  // alpha-steps
    std::map<Q, long> counts;  // s -> number of highest-weight discrete copies D-(s)
    std::vector<HWColumn> columns;
    std::vector<std::string> diagnostics;
    Q head_s;
    Q head_omega;

    const HWColumn* column(const RootVector& top) const;
    nlohmann::json to_json() const;
    std::string to_text() const;
};

HWDecomposition decompose_hw(const AlgebraContext& ctx, const HighestWeight& lambda, const So21Triple& t, int depth);
HWDecomposition decompose_hw(const WeightTable& table, const So21Triple& t, int depth);

Q casimir_on_hw(const CartanMatrix& a, const HighestWeight& lambda, const So21Triple& t);

}  // namespace kmso21
