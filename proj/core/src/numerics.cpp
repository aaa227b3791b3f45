#include "cartan/numerics.hpp"

#include "cartan/errors.hpp"

namespace cartan {

std::vector<double> cumulative_integral(const std::vector<double>& f, double h) {
    const size_t n = f.size();
    if (n < 3) throw TooFewSamples("cumulative_integral needs at least 3 samples");
    std::vector<double> out(n, 0.0);
    out[1] = h * (5.0 * f[0] + 8.0 * f[1] - f[2]) / 12.0;
    for (size_t i = 2; i < n; ++i) {
        if (i % 2 == 0)
            out[i] = out[i - 2] + h * (f[i - 2] + 4.0 * f[i - 1] + f[i]) / 3.0;
        else
            out[i] = out[i - 1] + h * (-f[i - 2] + 8.0 * f[i - 1] + 5.0 * f[i]) / 12.0;
    }
    return out;
}

namespace {

// Index helper for sequences where front() == back() duplicates the seam.
struct Wrap {
    long n;  // number of distinct samples
    long operator()(long i) const {
        long m = i % n;
        return m < 0 ? m + n : m;
    }
};

template <class T>
std::vector<T> derivative_impl(const std::vector<T>& f, double h, bool periodic) {
    const long n = static_cast<long>(f.size());
    if (n < 5) throw TooFewSamples("derivative_samples needs at least 5 samples");
    std::vector<T> out(f.size());
    const double s = 1.0 / (12.0 * h);
    if (periodic) {
        Wrap w{n - 1};  // last sample repeats the first
        for (long i = 0; i < n - 1; ++i)
            out[i] = (f[w(i - 2)] - 8.0 * f[w(i - 1)] + 8.0 * f[w(i + 1)] - f[w(i + 2)]) * s;
        out[n - 1] = out[0];
        return out;
    }
    for (long i = 2; i < n - 2; ++i)
        out[i] = (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) * s;
    // one-sided fourth-order stencils at the ends
    out[0] = (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]) * s;
    out[1] = (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]) * s;
    out[n - 2] = (3.0 * f[n - 1] + 10.0 * f[n - 2] - 18.0 * f[n - 3] + 6.0 * f[n - 4] - f[n - 5]) * s;
    out[n - 1] = (25.0 * f[n - 1] - 48.0 * f[n - 2] + 36.0 * f[n - 3] - 16.0 * f[n - 4] + 3.0 * f[n - 5]) * s;
    return out;
}

}  // namespace

std::vector<double> derivative_samples(const std::vector<double>& f, double h, bool periodic) {
    return derivative_impl(f, h, periodic);
}

std::vector<Vec3> derivative_samples(const std::vector<Vec3>& f, double h, bool periodic) {
    return derivative_impl(f, h, periodic);
}

double bisect(const std::function<double(double)>& f, double lo, double hi, double xtol) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    assert(flo * fhi < 0.0);
    while (std::abs(hi - lo) > xtol) {
        double mid = 0.5 * (lo + hi);
        double fm = f(mid);
        if (fm == 0.0) return mid;
        if (flo * fm < 0.0) {
            hi = mid;
            fhi = fm;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace cartan
