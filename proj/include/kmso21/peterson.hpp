#pragma once

#include "kmso21/cartan.hpp"

#include <map>
#include <mutex>

namespace kmso21 {

// Root multiplicities from the Peterson recursion. Independent of the bracket engine.
class PetersonTable {
public:
    explicit PetersonTable(CartanMatrix a) : a_(std::move(a)) {}

    // Multiplicity of a root; 0 for non-roots. Negative vectors mirror positive ones.
    long multiplicity(const RootVector& b);
    void extend_to_height(int64_t h);
    int64_t computed_height() const { return height_; }

private:
    CartanMatrix a_;
    int64_t height_ = 0;
    std::map<RootVector, Q> c_;
    std::map<RootVector, Q> mult_;
    std::mutex mu_;
};

}  // namespace kmso21
