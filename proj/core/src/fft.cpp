#include "fft.hpp"

#include <fftw3.h>

#include <mutex>

namespace zxi::detail {

namespace {

// The planner is not thread-safe; execution on distinct arrays is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct Plan {
    fftw_plan p = nullptr;
    ~Plan() {
        if (p) {
            std::lock_guard<std::mutex> lock(planner_mutex());
            fftw_destroy_plan(p);
        }
    }
};

}  // namespace

std::vector<cplx> rfft(const std::vector<double>& x) {
    const std::size_t n = x.size();
    std::vector<double> in(x);
    std::vector<cplx> out(n / 2 + 1);
    Plan plan;
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        plan.p = fftw_plan_dft_r2c_1d(static_cast<int>(n), in.data(), reinterpret_cast<fftw_complex*>(out.data()),
                                      FFTW_ESTIMATE);
    }
    fftw_execute(plan.p);
    return out;
}

std::vector<double> irfft(const std::vector<cplx>& X, std::size_t n) {
    std::vector<cplx> in(X);
    in.resize(n / 2 + 1);
    std::vector<double> out(n);
    Plan plan;
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        plan.p = fftw_plan_dft_c2r_1d(static_cast<int>(n), reinterpret_cast<fftw_complex*>(in.data()), out.data(),
                                      FFTW_ESTIMATE);
    }
    fftw_execute(plan.p);
    const double scale = 1.0 / static_cast<double>(n);
    for (auto& v : out) v *= scale;
    return out;
}

}  // namespace zxi::detail
