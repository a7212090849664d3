#include "sklr/kernel.hpp"

#include <algorithm>
#include <cmath>

#include "sklr/errors.hpp"

namespace sklr {

KernelSpec KernelSpec::gaussian(double sigma) {
    KernelSpec s;
    s.kind = Kind::gaussian;
    s.sigma = sigma;
    s.validate();
    return s;
}

KernelSpec KernelSpec::linear() {
    KernelSpec s;
    s.kind = Kind::linear;
    return s;
}

KernelSpec KernelSpec::polynomial(int degree, double coef) {
    KernelSpec s;
    s.kind = Kind::polynomial;
    s.degree = degree;
    s.coef = coef;
    s.validate();
    return s;
}

void KernelSpec::validate() const {
    if (kind == Kind::gaussian && !(sigma > 0.0))
        throw input_error("kernel: gaussian sigma must be > 0");
    if (kind == Kind::polynomial && degree < 1)
        throw input_error("kernel: polynomial degree must be >= 1");
}

std::string KernelSpec::name() const {
    switch (kind) {
        case Kind::gaussian: return "gaussian";
        case Kind::linear: return "linear";
        case Kind::polynomial: return "polynomial";
    }
    return "?";
}

namespace {

// integer power by repeated multiplication, deterministic across libm builds
double int_pow(double base, int e) {
    double r = 1.0;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

} // namespace

double kernel_eval(const KernelSpec& spec, std::span<const double> a,
                   std::span<const double> b) {
    if (a.size() != b.size())
        throw input_error("kernel: dimension mismatch (" + std::to_string(a.size()) +
                          " vs " + std::to_string(b.size()) + ")");
    switch (spec.kind) {
        case KernelSpec::Kind::gaussian: {
            double d2 = 0.0;
            for (std::size_t k = 0; k < a.size(); ++k) {
                const double diff = a[k] - b[k];
                d2 += diff * diff;
            }
            return std::exp(-d2 / (2.0 * spec.sigma * spec.sigma));
        }
        case KernelSpec::Kind::linear: {
            double dot = 0.0;
            for (std::size_t k = 0; k < a.size(); ++k) dot += a[k] * b[k];
            return dot;
        }
        case KernelSpec::Kind::polynomial: {
            double dot = 0.0;
            for (std::size_t k = 0; k < a.size(); ++k) dot += a[k] * b[k];
            return int_pow(dot + spec.coef, spec.degree);
        }
    }
    return 0.0;
}

KernelCache::KernelCache(KernelSpec spec, const Dataset& d, std::size_t full_threshold)
    : spec_(spec), data_(&d), n_(d.n) {
    spec_.validate();
    full_mode_ = n_ <= full_threshold;
    diagonal_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i)
        diagonal_[i] = kernel_eval(spec_, d.row(i), d.row(i));

    if (full_mode_) {
        full_.resize(n_ * n_);
        for (std::size_t i = 0; i < n_; ++i) compute_row(i, full_.data() + i * n_);
    } else {
        capacity_ = std::max<std::size_t>(2 * d.p, 512);
        slabs_.resize(capacity_ * n_);
    }
}

void KernelCache::compute_row(std::size_t i, double* out) const {
    const auto xi = data_->row(i);
    for (std::size_t j = 0; j < n_; ++j)
        out[j] = kernel_eval(spec_, xi, data_->row(j));
}

std::span<const double> KernelCache::row(std::size_t i) {
    if (full_mode_) return {full_.data() + i * n_, n_};

    auto it = slot_of_.find(i);
    if (it != slot_of_.end()) {
        ++hits_;
        lru_order_.erase(it->second.second);
        lru_order_.push_front(i);
        it->second.second = lru_order_.begin();
        return {slabs_.data() + it->second.first * n_, n_};
    }

    ++misses_;
    std::size_t slot;
    if (slot_of_.size() < capacity_) {
        slot = slot_of_.size();
    } else {
        const std::size_t evicted = lru_order_.back();
        lru_order_.pop_back();
        slot = slot_of_.at(evicted).first;
        slot_of_.erase(evicted);
    }
    compute_row(i, slabs_.data() + slot * n_);
    lru_order_.push_front(i);
    slot_of_.emplace(i, std::make_pair(slot, lru_order_.begin()));
    return {slabs_.data() + slot * n_, n_};
}

} // namespace sklr
