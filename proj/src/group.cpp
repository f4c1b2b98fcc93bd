#include "uf/group.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <sstream>

#include "uf/errors.hpp"

namespace uf {

namespace {

std::map<std::uint32_t, std::uint32_t> factorize_small(std::uint32_t n) {
    std::map<std::uint32_t, std::uint32_t> out;
    for (std::uint32_t p = 2; static_cast<std::uint64_t>(p) * p <= n; ++p) {
        while (n % p == 0) {
            ++out[p];
            n /= p;
        }
    }
    if (n > 1) ++out[n];
    return out;
}

} // namespace

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<std::uint32_t> invariant_factors)
    : factors_(std::move(invariant_factors)) {
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (factors_[i] < 2)
            throw domain_error("invariant factor must be >= 2");
        if (i > 0 && factors_[i] % factors_[i - 1] != 0)
            throw domain_error("invariant factors must form a divisibility chain");
        order_ *= factors_[i];
    }
}

FiniteAbelianGroup FiniteAbelianGroup::from_cyclic_orders(
    const std::vector<std::uint32_t>& orders) {
    // Collect prime-power components, then re-stack into invariant factors:
    // the largest factor takes the largest power of each prime, and so on.
    std::map<std::uint32_t, std::vector<std::uint32_t>> powers; // prime -> p^e list, desc
    for (std::uint32_t n : orders) {
        if (n == 0) throw domain_error("cyclic order must be >= 1");
        for (const auto& [p, e] : factorize_small(n)) {
            std::uint32_t pe = 1;
            for (std::uint32_t i = 0; i < e; ++i) pe *= p;
            powers[p].push_back(pe);
        }
    }
    std::size_t depth = 0;
    for (auto& [p, list] : powers) {
        std::sort(list.begin(), list.end(), std::greater<>());
        depth = std::max(depth, list.size());
    }
    std::vector<std::uint32_t> factors(depth, 1);
    for (const auto& [p, list] : powers)
        for (std::size_t i = 0; i < list.size(); ++i)
            factors[i] *= list[i]; // factors[0] is the largest invariant factor
    std::reverse(factors.begin(), factors.end());
    return FiniteAbelianGroup(std::move(factors));
}

FiniteAbelianGroup FiniteAbelianGroup::parse(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c)))
            s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    if (s.empty()) throw domain_error("empty group descriptor");
    std::vector<std::uint32_t> orders;
    std::size_t i = 0;
    while (i < s.size()) {
        if (s[i] != 'c') throw domain_error("bad group descriptor: " + text);
        ++i;
        if (i < s.size() && s[i] == '_') ++i;
        std::size_t j = i;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        if (j == i) throw domain_error("bad group descriptor: " + text);
        unsigned long v = std::stoul(s.substr(i, j - i));
        if (v == 0 || v > 1'000'000) throw domain_error("cyclic order out of range: " + text);
        orders.push_back(static_cast<std::uint32_t>(v));
        i = j;
        if (i < s.size()) {
            if (s[i] != 'x' && s[i] != '*') throw domain_error("bad group descriptor: " + text);
            ++i;
        }
    }
    return from_cyclic_orders(orders);
}

bool FiniteAbelianGroup::is_zero(const GroupElem& a) const {
    return std::all_of(a.begin(), a.end(), [](std::uint32_t c) { return c == 0; });
}

GroupElem FiniteAbelianGroup::add(const GroupElem& a, const GroupElem& b) const {
    GroupElem out(factors_.size());
    for (std::size_t i = 0; i < factors_.size(); ++i)
        out[i] = (a[i] + b[i]) % factors_[i];
    return out;
}

GroupElem FiniteAbelianGroup::neg(const GroupElem& a) const {
    GroupElem out(factors_.size());
    for (std::size_t i = 0; i < factors_.size(); ++i)
        out[i] = a[i] == 0 ? 0 : factors_[i] - a[i];
    return out;
}

GroupElem FiniteAbelianGroup::mul_int(const GroupElem& a, std::uint64_t n) const {
    GroupElem out(factors_.size());
    for (std::size_t i = 0; i < factors_.size(); ++i)
        out[i] = static_cast<std::uint32_t>((static_cast<std::uint64_t>(a[i]) * n) % factors_[i]);
    return out;
}

std::uint64_t FiniteAbelianGroup::elem_order(const GroupElem& a) const {
    std::uint64_t ord = 1;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        std::uint64_t ci = factors_[i] / std::gcd<std::uint64_t>(a[i], factors_[i]);
        ord = std::lcm(ord, ci);
    }
    return ord;
}

GroupElem FiniteAbelianGroup::element_at(std::uint64_t index) const {
    if (index >= order_) throw domain_error("group element index out of range");
    GroupElem out(factors_.size());
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        out[i] = static_cast<std::uint32_t>(index % factors_[i]);
        index /= factors_[i];
    }
    return out;
}

std::uint64_t FiniteAbelianGroup::index_of(const GroupElem& a) const {
    if (!contains(a)) throw domain_error("element does not belong to the group");
    std::uint64_t idx = 0;
    for (std::size_t i = factors_.size(); i-- > 0;)
        idx = idx * factors_[i] + a[i];
    return idx;
}

std::vector<GroupElem> FiniteAbelianGroup::elements() const {
    std::vector<GroupElem> out;
    out.reserve(order_);
    for (std::uint64_t i = 0; i < order_; ++i) out.push_back(element_at(i));
    return out;
}

std::vector<GroupElem> FiniteAbelianGroup::nonzero_elements() const {
    std::vector<GroupElem> out;
    out.reserve(order_ - 1);
    for (std::uint64_t i = 1; i < order_; ++i) out.push_back(element_at(i));
    return out;
}

bool FiniteAbelianGroup::contains(const GroupElem& a) const {
    if (a.size() != factors_.size()) return false;
    for (std::size_t i = 0; i < factors_.size(); ++i)
        if (a[i] >= factors_[i]) return false;
    return true;
}

std::uint64_t FiniteAbelianGroup::davenport_ceiling() const {
    std::uint64_t d = 1;
    for (std::uint32_t f : factors_) d += f - 1;
    return d;
}

std::string FiniteAbelianGroup::name() const {
    if (factors_.empty()) return "C_1";
    std::ostringstream os;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (i) os << " x ";
        os << "C_" << factors_[i];
    }
    return os.str();
}

namespace {

// Partitions of e, each partition given as a multiset of parts.
void partitions_rec(std::uint32_t remaining, std::uint32_t max_part,
                    std::vector<std::uint32_t>& cur,
                    std::vector<std::vector<std::uint32_t>>& out) {
    if (remaining == 0) {
        out.push_back(cur);
        return;
    }
    for (std::uint32_t part = std::min(remaining, max_part); part >= 1; --part) {
        cur.push_back(part);
        partitions_rec(remaining - part, part, cur, out);
        cur.pop_back();
    }
}

std::vector<std::vector<std::uint32_t>> partitions(std::uint32_t e) {
    std::vector<std::vector<std::uint32_t>> out;
    std::vector<std::uint32_t> cur;
    partitions_rec(e, e, cur, out);
    return out;
}

} // namespace

std::vector<FiniteAbelianGroup> groups_up_to_order(std::uint64_t max_order) {
    std::vector<FiniteAbelianGroup> out;
    for (std::uint64_t n = 1; n <= max_order; ++n) {
        auto primes = factorize_small(static_cast<std::uint32_t>(n));
        // One abelian group per choice of a partition of each prime exponent.
        std::vector<std::vector<std::vector<std::uint32_t>>> choices; // per prime
        std::vector<std::uint32_t> prime_list;
        for (const auto& [p, e] : primes) {
            prime_list.push_back(p);
            choices.push_back(partitions(e));
        }
        std::vector<std::size_t> pick(choices.size(), 0);
        std::vector<FiniteAbelianGroup> groups_of_n;
        while (true) {
            std::vector<std::uint32_t> cyclic_orders;
            for (std::size_t i = 0; i < choices.size(); ++i)
                for (std::uint32_t part : choices[i][pick[i]]) {
                    std::uint32_t pe = 1;
                    for (std::uint32_t k = 0; k < part; ++k) pe *= prime_list[i];
                    cyclic_orders.push_back(pe);
                }
            groups_of_n.push_back(FiniteAbelianGroup::from_cyclic_orders(cyclic_orders));
            std::size_t i = 0;
            for (; i < pick.size(); ++i) {
                if (++pick[i] < choices[i].size()) break;
                pick[i] = 0;
            }
            if (i == pick.size()) break;
        }
        std::sort(groups_of_n.begin(), groups_of_n.end());
        out.insert(out.end(), groups_of_n.begin(), groups_of_n.end());
    }
    return out;
}

} // namespace uf
