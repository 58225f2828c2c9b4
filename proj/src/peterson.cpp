#include "kmso21/peterson.hpp"

#include <numeric>
#include <stdexcept>

namespace kmso21 {

namespace {

void compositions(size_t rank, int64_t h, std::vector<int64_t>& cur, size_t pos, std::vector<RootVector>& out) {
    if (pos + 1 == rank) {
        cur[pos] = h;
        out.emplace_back(cur);
        return;
    }
    for (int64_t k = h; k >= 0; --k) {
        cur[pos] = k;
        compositions(rank, h - k, cur, pos + 1, out);
    }
}

std::vector<RootVector> level(size_t rank, int64_t h) {
    std::vector<RootVector> out;
    std::vector<int64_t> cur(rank, 0);
    compositions(rank, h, cur, 0, out);
    return out;
}

}  // namespace

void PetersonTable::extend_to_height(int64_t h) {
    std::lock_guard<std::mutex> lock(mu_);
    size_t r = a_.rank();
    std::vector<std::vector<RootVector>> levels(static_cast<size_t>(h + 1));
    for (int64_t k = 1; k <= h; ++k) levels[static_cast<size_t>(k)] = level(r, k);
    for (int64_t k = height_ + 1; k <= h; ++k) {
        for (const auto& b : levels[static_cast<size_t>(k)]) {
            Q cb;
            bool undetermined = false;
            if (k == 1) {
                cb = 1;
            } else {
                Q s = 0;
                for (int64_t k1 = 1; k1 < k; ++k1)
                    for (const auto& b1 : levels[static_cast<size_t>(k1)]) {
                        RootVector b2 = b - b1;
                        if (!b2.is_positive()) continue;
                        auto i1 = c_.find(b1), i2 = c_.find(b2);
                        if (i1 == c_.end() || i2 == c_.end()) continue;
                        s += a_.inner_product(b1, b2) * i1->second * i2->second;
                    }
                Q d = a_.inner_product(b, b) - Q(2 * static_cast<long>(k));
                if (d == 0) {
                    // (b, b - 2 rho) = 0 forces b^2 = 2 ht(b) > 2 for ht >= 2, so b is not a root.
                    if (s != 0) throw std::logic_error("Peterson recursion: zero denominator with nonzero sum at " + b.str());
                    undetermined = true;
                } else {
                    cb = s / d;
                }
            }
            // c_b = sum_{n | b} mult(b/n)/n
            Q divisors = 0;
            int64_t g = 0;
            for (auto x : b.n) g = std::gcd(g, x);
            for (int64_t n = 2; n <= g; ++n) {
                if (g % n) continue;
                RootVector sub = b;
                for (auto& x : sub.n) x /= n;
                auto it = mult_.find(sub);
                if (it != mult_.end()) divisors += it->second / Q(static_cast<long>(n));
            }
            if (undetermined) cb = divisors;
            Q m = cb - divisors;
            if (m.get_den() != 1 || m < 0) throw std::logic_error("Peterson recursion: non-integral multiplicity at " + b.str());
            if (cb != 0) c_[b] = cb;
            if (m != 0) mult_[b] = m;
        }
        height_ = k;
    }
}

long PetersonTable::multiplicity(const RootVector& b) {
    if (b.rank() != a_.rank()) throw std::invalid_argument("multiplicity: rank mismatch");
    if (!b.sign_pure()) return 0;
    RootVector p = b.is_negative() ? -b : b;
    if (p.height() > height_) extend_to_height(p.height());
    std::lock_guard<std::mutex> lock(mu_);
    auto it = mult_.find(p);
    return it == mult_.end() ? 0 : it->second.get_num().get_si();
}

}  // namespace kmso21
