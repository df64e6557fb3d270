#include "dgbo/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace dgbo::fft {
namespace {

enum class Kind { Forward, Backward, R2C, C2R };

std::mutex& plan_mutex() {
    static std::mutex m;
    return m;
}

fftw_plan get_plan(Kind kind, int n) {
    static std::map<std::pair<int, int>, fftw_plan> cache;
    std::lock_guard<std::mutex> lock(plan_mutex());
    auto key = std::make_pair(static_cast<int>(kind), n);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    // FFTW_ESTIMATE never touches the arrays, so scratch buffers only fix the layout.
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    fftw_complex* a = fftw_alloc_complex(n);
    fftw_complex* b = fftw_alloc_complex(n);
    double* r = fftw_alloc_real(n);
    fftw_plan p = nullptr;
    switch (kind) {
        case Kind::Forward: p = fftw_plan_dft_1d(n, a, b, FFTW_FORWARD, flags); break;
        case Kind::Backward: p = fftw_plan_dft_1d(n, a, b, FFTW_BACKWARD, flags); break;
        case Kind::R2C: p = fftw_plan_dft_r2c_1d(n, r, a, flags); break;
        case Kind::C2R: p = fftw_plan_dft_c2r_1d(n, a, r, flags); break;
    }
    fftw_free(a);
    fftw_free(b);
    fftw_free(r);
    if (!p) throw std::runtime_error("fftw planning failed");
    cache.emplace(key, p);
    return p;
}

fftw_complex* as_fftw(cplx* p) { return reinterpret_cast<fftw_complex*>(p); }
fftw_complex* as_fftw(const cplx* p) { return reinterpret_cast<fftw_complex*>(const_cast<cplx*>(p)); }

}  // namespace

void forward(const cplx* in, cplx* out, int n) {
    fftw_execute_dft(get_plan(Kind::Forward, n), as_fftw(in), as_fftw(out));
}

void inverse(const cplx* in, cplx* out, int n) {
    fftw_execute_dft(get_plan(Kind::Backward, n), as_fftw(in), as_fftw(out));
    const double s = 1.0 / n;
    for (int j = 0; j < n; ++j) out[j] *= s;
}

void rfft(const double* in, cplx* out, int n) {
    fftw_execute_dft_r2c(get_plan(Kind::R2C, n), const_cast<double*>(in), as_fftw(out));
}

void irfft(const cplx* in, double* out, int n) {
    // c2r overwrites its input
    thread_local std::vector<cplx> scratch;
    scratch.assign(in, in + n / 2 + 1);
    fftw_execute_dft_c2r(get_plan(Kind::C2R, n), as_fftw(scratch.data()), out);
    const double s = 1.0 / n;
    for (int j = 0; j < n; ++j) out[j] *= s;
}

std::vector<cplx> forward(const std::vector<double>& v) {
    std::vector<cplx> in(v.begin(), v.end()), out(v.size());
    forward(in.data(), out.data(), static_cast<int>(v.size()));
    return out;
}

std::vector<cplx> forward(const std::vector<cplx>& v) {
    std::vector<cplx> out(v.size());
    forward(v.data(), out.data(), static_cast<int>(v.size()));
    return out;
}

std::vector<cplx> inverse(const std::vector<cplx>& c) {
    std::vector<cplx> out(c.size());
    inverse(c.data(), out.data(), static_cast<int>(c.size()));
    return out;
}

}  // namespace dgbo::fft
