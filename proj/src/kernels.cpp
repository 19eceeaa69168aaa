#include "cdcurv/kernels.hpp"

#include <cmath>

namespace cdcurv {

double harmonic(int i) {
    double sum = 0.0, comp = 0.0;
    for (int j = 1; j <= i; ++j) {
        double term = 1.0 / j - comp;
        double next = sum + term;
        comp = (next - sum) - term;
        sum = next;
    }
    return sum;
}

DiagonalKernel DiagonalKernel::power(int m, double k) {
    if (m < 1) throw ConfigError("ball dimension m must be >= 1");
    if (k <= 0.0) throw ConfigError("power kernel requires k > 0");
    DiagonalKernel K;
    K.m_ = m;
    K.family_ = KernelFamily::Power;
    K.k_ = k;
    return K;
}

DiagonalKernel DiagonalKernel::log_plus(int m) {
    if (m < 1) throw ConfigError("ball dimension m must be >= 1");
    DiagonalKernel K;
    K.m_ = m;
    K.family_ = KernelFamily::LogPlus;
    return K;
}

DiagonalKernel DiagonalKernel::dirichlet1d() {
    DiagonalKernel K;
    K.m_ = 1;
    K.family_ = KernelFamily::Dirichlet1D;
    return K;
}

DiagonalKernel DiagonalKernel::tabulated(int m, std::vector<double> coeffs,
                                         std::optional<GrowthBound> growth) {
    if (m < 1) throw ConfigError("ball dimension m must be >= 1");
    if (coeffs.empty()) throw ConfigError("tabulated kernel needs at least a(0)");
    for (double a : coeffs)
        if (a <= 0.0) throw ConfigError("tabulated kernel coefficients must be positive");
    if (growth && (growth->C <= 0.0 || growth->p < 0.0))
        throw ConfigError("tabulated growth bound requires C > 0 and p >= 0");
    DiagonalKernel K;
    K.m_ = m;
    K.family_ = KernelFamily::Tabulated;
    K.coeffs_ = std::move(coeffs);
    K.growth_ = growth;
    return K;
}

double DiagonalKernel::coeff(int i) const {
    if (i < 0) throw ConfigError("kernel coefficient index must be >= 0");
    switch (family_) {
        case KernelFamily::Power: {
            // (k)_i / i! built incrementally
            double a = 1.0;
            for (int j = 1; j <= i; ++j) a *= (k_ + j - 1) / j;
            return a;
        }
        case KernelFamily::LogPlus:
            return 1.0 + harmonic(i);
        case KernelFamily::Dirichlet1D:
            return 1.0 / (i + 1);
        case KernelFamily::Tabulated:
            if (static_cast<size_t>(i) >= coeffs_.size())
                throw ConfigError("tabulated kernel coefficient index beyond the table");
            return coeffs_[static_cast<size_t>(i)];
    }
    throw ConfigError("unreachable kernel family");
}

double DiagonalKernel::weight(const MultiIndex& alpha) const {
    if (alpha.dim() != m_) throw ConfigError("multi-index dimension does not match the kernel");
    return coeff(alpha.degree()) * static_cast<double>(multinomial(alpha));
}

Complex DiagonalKernel::eval_inner(Complex t, double tol) const {
    if (std::abs(t) >= 1.0) throw DomainError("kernel argument |<z,w>| must be < 1");
    if (tol <= 0.0) throw ConfigError("kernel tail tolerance must be positive");
    switch (family_) {
        case KernelFamily::Power:
            return std::pow(Complex(1.0, 0.0) - t, -k_);
        case KernelFamily::LogPlus:
            return (Complex(1.0, 0.0) - std::log(Complex(1.0, 0.0) - t)) /
                   (Complex(1.0, 0.0) - t);
        case KernelFamily::Dirichlet1D: {
            const double r = std::abs(t);
            Complex sum(0.0, 0.0);
            Complex tp(1.0, 0.0);
            double rp = 1.0;
            for (int i = 0;; ++i) {
                sum += tp / static_cast<double>(i + 1);
                tp *= t;
                rp *= r;
                // remaining terms are bounded by rp/((i+2)(1-r))
                if (rp / ((i + 2) * (1.0 - r)) < tol) break;
                if (i > 20000000) throw EvaluationError("kernel series failed to converge");
            }
            return sum;
        }
        case KernelFamily::Tabulated: {
            if (!growth_)
                throw ConfigError("tabulated kernel has no growth bound; tail cannot be estimated");
            const double r = std::abs(t);
            const size_t L = coeffs_.size();
            // tail over i >= L: a(i) r^i <= C (i+1)^p r^i <= C Ks s^i with
            // s = (1+r)/2 and Ks = max_i (i+1)^p (r/s)^i
            const double s = 0.5 * (1.0 + r);
            double Ks = 1.0;
            if (r > 0.0) {
                const double ratio = r / s;
                const double istar = growth_->p / std::log(1.0 / ratio);
                for (double i : {0.0, std::floor(istar), std::ceil(istar)}) {
                    if (i < 0.0) continue;
                    Ks = std::max(Ks, std::pow(i + 1.0, growth_->p) * std::pow(ratio, i));
                }
            }
            const double tail = growth_->C * Ks * std::pow(s, static_cast<double>(L)) / (1.0 - s);
            if (tail >= tol)
                throw ConfigError("tabulated kernel table too short for the requested tolerance");
            Complex sum(0.0, 0.0);
            Complex tp(1.0, 0.0);
            for (double a : coeffs_) {
                sum += a * tp;
                tp *= t;
            }
            return sum;
        }
    }
    throw ConfigError("unreachable kernel family");
}

Complex DiagonalKernel::eval(const Point& z, const Point& w, double tol) const {
    if (z.dim() != m_ || w.dim() != m_)
        throw ConfigError("point dimension does not match the kernel");
    return eval_inner(ball_inner(z, w), tol);
}

bool DiagonalKernel::inverse_is_polynomial() const {
    if (family_ != KernelFamily::Power) return false;
    return std::abs(k_ - std::round(k_)) < 1e-12;
}

int DiagonalKernel::inverse_degree() const {
    if (!inverse_is_polynomial())
        throw ConfigError("1/K is not a polynomial for this kernel");
    return static_cast<int>(std::lround(k_));
}

bool DiagonalKernel::same_rule(const DiagonalKernel& other) const {
    return descriptor() == other.descriptor();
}

nlohmann::json DiagonalKernel::descriptor() const {
    nlohmann::json j;
    j["m"] = m_;
    switch (family_) {
        case KernelFamily::Power:
            j["family"] = "power";
            j["k"] = k_;
            break;
        case KernelFamily::LogPlus:
            j["family"] = "logplus";
            break;
        case KernelFamily::Dirichlet1D:
            j["family"] = "dirichlet1d";
            break;
        case KernelFamily::Tabulated:
            j["family"] = "tabulated";
            j["coeffs"] = coeffs_;
            if (growth_) j["growth"] = {{"C", growth_->C}, {"p", growth_->p}};
            break;
    }
    return j;
}

DiagonalKernel DiagonalKernel::from_json(const nlohmann::json& j) {
    const std::string family = j.at("family").get<std::string>();
    const int m = j.at("m").get<int>();
    if (family == "power") return power(m, j.at("k").get<double>());
    if (family == "logplus") return log_plus(m);
    if (family == "dirichlet1d") {
        if (m != 1) throw ConfigError("dirichlet1d kernel requires m = 1");
        return dirichlet1d();
    }
    if (family == "tabulated") {
        std::optional<GrowthBound> growth;
        if (j.contains("growth"))
            growth = GrowthBound{j["growth"].at("C").get<double>(),
                                 j["growth"].at("p").get<double>()};
        return tabulated(m, j.at("coeffs").get<std::vector<double>>(), growth);
    }
    throw ConfigError("unknown kernel family: " + family);
}

InverseKernelCoeffs inverse_coeffs(int k) {
    if (k < 1) throw ConfigError("inverse-kernel coefficients require k >= 1");
    if (k > 60) throw CapacityError("binomial coefficients exceed 64-bit range for k > 60");
    InverseKernelCoeffs out;
    out.k = k;
    out.b.resize(static_cast<size_t>(k) + 1);
    long long binom = 1;
    for (int i = 0; i <= k; ++i) {
        out.b[static_cast<size_t>(i)] = (i % 2 == 0) ? binom : -binom;
        if (i < k) binom = binom * (k - i) / (i + 1);
    }
    return out;
}

}  // namespace cdcurv
