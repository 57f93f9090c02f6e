#include "fdesign/set_function.hpp"

#include <algorithm>

#include "fdesign/errors.hpp"

namespace fdesign {

SetFunction::SetFunction(int r, int n) : r_(r), n_(n) {
    if (r < 0 || n < 0) throw InvalidArgument("SetFunction: negative r or n");
}

void SetFunction::check_set(const VertexSet& e) const {
    if (static_cast<int>(e.size()) != r_) throw InvalidArgument("SetFunction: set has the wrong size");
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] < 0 || e[i] >= n_) throw InvalidArgument("SetFunction: vertex outside the ground set");
        if (i > 0 && e[i - 1] >= e[i]) throw InvalidArgument("SetFunction: set must be sorted without repeats");
    }
}

i64 SetFunction::operator()(const VertexSet& s) const {
    if (static_cast<int>(s.size()) > r_) throw InvalidArgument("SetFunction: set larger than r");
    if (static_cast<int>(s.size()) == r_) {
        auto it = values_.find(s);
        return it == values_.end() ? 0 : it->second;
    }
    i64 sum = 0;
    for (const auto& [e, v] : values_)
        if (is_subset(s, e)) sum += v;
    return sum;
}

void SetFunction::set(VertexSet e, i64 v) {
    std::sort(e.begin(), e.end());
    check_set(e);
    if (v == 0)
        values_.erase(e);
    else
        values_[std::move(e)] = v;
}

void SetFunction::add(VertexSet e, i64 v) {
    if (v == 0) return;
    std::sort(e.begin(), e.end());
    check_set(e);
    auto [it, fresh] = values_.emplace(std::move(e), v);
    if (!fresh) {
        it->second += v;
        if (it->second == 0) values_.erase(it);
    }
}

void SetFunction::resize(int n) {
    if (n < n_) throw InvalidArgument("SetFunction: cannot shrink the ground set");
    n_ = n;
}

SetFunction& SetFunction::operator+=(const SetFunction& o) {
    if (o.r_ != r_) throw InvalidArgument("SetFunction: arity mismatch");
    if (o.n_ > n_) n_ = o.n_;
    for (const auto& [e, v] : o.values_) {
        auto [it, fresh] = values_.emplace(e, v);
        if (!fresh) {
            it->second += v;
            if (it->second == 0) values_.erase(it);
        }
    }
    return *this;
}

SetFunction SetFunction::operator+(const SetFunction& o) const {
    SetFunction out = *this;
    out += o;
    return out;
}

SetFunction SetFunction::operator*(i64 c) const {
    SetFunction out(r_, n_);
    if (c == 0) return out;
    for (const auto& [e, v] : values_) out.values_.emplace(e, v * c);
    return out;
}

DegreeTable SetFunction::extension_table(int i) const {
    if (i < 0 || i > r_) throw InvalidArgument("extension_table: level out of range");
    DegreeTable t;
    for (const auto& [e, v] : values_) for_each_subset(e, i, [&](const VertexSet& s) { t[s] += v; });
    return t;
}

std::optional<SetFunction::Violation> SetFunction::divisibility_violation(const DivVector& b) const {
    for (int i = 0; i < static_cast<int>(b.size()) && i <= r_; ++i) {
        if (b[i] <= 0) throw InvalidArgument("divisibility: moduli must be positive");
        if (b[i] == 1) continue;
        auto table = extension_table(i);
        std::optional<Violation> best;
        for (const auto& [s, v] : table)
            if (mod(v, b[i]) != 0 && (!best || s < best->set)) best = Violation{s, v, b[i]};
        if (best) return best;
    }
    return std::nullopt;
}

SetFunction indicator(const RGraph& g) {
    SetFunction phi(g.r(), g.n());
    for (const auto& e : g) phi.set(e, 1);
    return phi;
}

SetFunction indicator(const MultiRGraph& g) {
    SetFunction phi(g.r(), g.n());
    for (const auto& [e, m] : g) phi.set(e, m);
    return phi;
}

}  // namespace fdesign
