#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace cyclewalk {

using BigInt = boost::multiprecision::cpp_int;

// Cycle type of one walk step: counts[j] = number of j-cycles, j >= 2.
// Immutable once constructed; derived constants are precomputed.
class ConjugacyClass {
public:
    // counts maps cycle length j (>= 2) to multiplicity k_j.
    explicit ConjugacyClass(const std::map<std::uint32_t, std::uint32_t>& counts) {
        for (const auto& [j, kj] : counts) {
            if (j < 2) throw std::invalid_argument("ConjugacyClass: cycle length must be >= 2");
            if (kj == 0) continue;
            counts_[j] = kj;
        }
        if (counts_.empty())
            throw std::invalid_argument("ConjugacyClass: at least one cycle required");
        for (const auto& [j, kj] : counts_) {
            support_ += j * kj;
            weight_ += (j - 1) * kj;
            pair_rate_ += static_cast<double>(j) * (j - 1) * kj;
            for (std::uint32_t c = 0; c < kj; ++c) lengths_desc_.push_back(j);
        }
        std::sort(lengths_desc_.begin(), lengths_desc_.end(), std::greater<>());
    }

    // Parses "k2=1,k3=2" style descriptors; zero entries are allowed and ignored.
    static ConjugacyClass parse(const std::string& text) {
        std::map<std::uint32_t, std::uint32_t> counts;
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (item.empty()) continue;
            const auto eq = item.find('=');
            if (eq == std::string::npos || item.size() < 4 || item[0] != 'k')
                throw std::invalid_argument("class descriptor: expected kJ=COUNT, got '" + item + "'");
            const std::uint32_t j = static_cast<std::uint32_t>(std::stoul(item.substr(1, eq - 1)));
            const std::uint32_t kj = static_cast<std::uint32_t>(std::stoul(item.substr(eq + 1)));
            if (counts.count(j)) throw std::invalid_argument("class descriptor: duplicate k" + std::to_string(j));
            counts[j] = kj;
        }
        return ConjugacyClass(counts);
    }

    std::string to_string() const {
        std::string out;
        for (const auto& [j, kj] : counts_) {
            if (!out.empty()) out += ',';
            out += 'k' + std::to_string(j) + '=' + std::to_string(kj);
        }
        return out;
    }

    const std::map<std::uint32_t, std::uint32_t>& counts() const { return counts_; }

    std::uint32_t count(std::uint32_t j) const {
        auto it = counts_.find(j);
        return it == counts_.end() ? 0 : it->second;
    }

    // Number of points moved by one step: sum of j * k_j.
    std::uint32_t support_size() const { return support_; }

    // Transposition-equivalents per step: sum of (j-1) * k_j.  Each step
    // changes the cycle count of the permutation by at most this much.
    std::uint32_t transposition_weight() const { return weight_; }

    std::uint32_t max_cycle_length() const { return counts_.rbegin()->first; }

    // Single k-cycle classes get dedicated closed forms in several places.
    bool is_single_cycle() const { return lengths_desc_.size() == 1; }
    bool is_single_transposition() const { return is_single_cycle() && lengths_desc_[0] == 2; }

    // Critical time 1 / sum_j j(j-1) k_j, in units of n steps.
    double critical_time() const { return 1.0 / pair_rate_; }

    // sum_j j(j-1) k_j, the mean-degree growth rate of the coupled process.
    double pair_rate() const { return pair_rate_; }

    // Cycle lengths of one step, longest first, e.g. k2=1,k3=1 -> {3, 2}.
    const std::vector<std::uint32_t>& cycle_lengths_desc() const { return lengths_desc_; }

    // Number of elements of this class in the symmetric group on n points:
    //   n! / ((n - support)! * prod_j j^{k_j} * k_j!)
    BigInt class_size(std::uint32_t n) const {
        if (n < support_) throw std::invalid_argument("class_size: n smaller than class support");
        BigInt num = 1;
        for (std::uint32_t v = n - support_ + 1; v <= n; ++v) num *= v;  // falling factorial
        BigInt den = 1;
        for (const auto& [j, kj] : counts_) {
            for (std::uint32_t c = 0; c < kj; ++c) den *= j;
            for (std::uint32_t c = 2; c <= kj; ++c) den *= c;
        }
        return num / den;
    }

private:
    std::map<std::uint32_t, std::uint32_t> counts_;
    std::uint32_t support_ = 0;
    std::uint32_t weight_ = 0;
    double pair_rate_ = 0.0;
    std::vector<std::uint32_t> lengths_desc_;
};

}  // namespace cyclewalk
