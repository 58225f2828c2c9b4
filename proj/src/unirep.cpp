#include "kmso21/unirep.hpp"

#include <Eigen/Dense>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/sinh_sinh.hpp>
#include <fftw3.h>
#include <omp.h>

#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace kmso21::unirep {

namespace {

constexpr double pi = std::numbers::pi;
const cplx I(0, 1);

double parse_double(const std::string& s) {
    size_t pos = 0;
    double v = 0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("bad number: " + s);
    }
    if (pos != s.size()) throw std::invalid_argument("bad number: " + s);
    return v;
}

// "0.1+0.2i", "-0.3i", "2", "i"
cplx parse_complex(std::string s) {
    if (s.empty()) throw std::invalid_argument("empty complex number");
    if (s.back() != 'i') return {parse_double(s), 0};
    s.pop_back();
    size_t split = std::string::npos;
    for (size_t k = s.size(); k-- > 1;)
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
            split = k;
            break;
        }
    auto imag = [](const std::string& t) {
        if (t.empty() || t == "+") return 1.0;
        if (t == "-") return -1.0;
        return parse_double(t);
    };
    if (split == std::string::npos) return {0, imag(s)};
    return {parse_double(s.substr(0, split)), imag(s.substr(split))};
}

double lgamma_ratio_sqrt(double s, int m, int n) {
    // sqrt(Gamma(m+1) Gamma(2s+n) / (Gamma(n+1) Gamma(2s+m)))
    return std::exp(0.5 * (std::lgamma(m + 1.0) + std::lgamma(2 * s + n) - std::lgamma(n + 1.0) - std::lgamma(2 * s + m)));
}

// Nodes and weights for the integral of (1-t)^a h(t) over [0,1] (Golub-Welsch).
void gauss_jacobi01(int npts, double a, std::vector<double>& t, std::vector<double>& w) {
    const double b = 0;
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(npts, npts);
    for (int k = 0; k < npts; ++k) {
        double s = 2.0 * k + a + b;
        J(k, k) = k == 0 ? (b - a) / (a + b + 2) : (b * b - a * a) / (s * (s + 2));
        if (k + 1 < npts) {
            double n = k + 1, sn = 2 * n + a + b;
            double v = 4 * n * (n + a) * (n + b) * (n + a + b) / (sn * sn * (sn + 1) * (sn - 1));
            J(k, k + 1) = J(k + 1, k) = std::sqrt(v);
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    double mu0 = std::exp((a + b + 1) * std::log(2.0) + std::lgamma(a + 1) + std::lgamma(b + 1) - std::lgamma(a + b + 2));
    t.resize(npts);
    w.resize(npts);
    for (int k = 0; k < npts; ++k) {
        double x = es.eigenvalues()(k);
        double v0 = es.eigenvectors()(0, k);
        t[k] = (1 + x) / 2;
        w[k] = mu0 * v0 * v0 / std::pow(2.0, a + 1);  // Jacobian of x -> t
    }
}

class Fft {
public:
    explicit Fft(int n) : n_(n) {
        std::lock_guard<std::mutex> lock(plan_mu());
        auto* in = fftw_alloc_complex(n);
        auto* out = fftw_alloc_complex(n);
        plan_ = fftw_plan_dft_1d(n, in, out, FFTW_FORWARD, FFTW_ESTIMATE);
        fftw_free(in);
        fftw_free(out);
    }
    ~Fft() {
        std::lock_guard<std::mutex> lock(plan_mu());
        fftw_destroy_plan(plan_);
    }
    Fft(const Fft&) = delete;
    Fft& operator=(const Fft&) = delete;

    // coefficients c_m = (1/n) sum_k f_k e^{-2 pi i m k / n}
    void run(const std::vector<cplx>& in, std::vector<cplx>& out) const {
        auto* a = fftw_alloc_complex(n_);
        auto* b = fftw_alloc_complex(n_);
        for (int k = 0; k < n_; ++k) {
            a[k][0] = in[k].real();
            a[k][1] = in[k].imag();
        }
        fftw_execute_dft(plan_, a, b);
        out.resize(n_);
        for (int k = 0; k < n_; ++k) out[k] = cplx(b[k][0], b[k][1]) / double(n_);
        fftw_free(a);
        fftw_free(b);
    }
    cplx coeff(const std::vector<cplx>& c, int m) const { return c[static_cast<size_t>(((m % n_) + n_) % n_)]; }

private:
    static std::mutex& plan_mu() {
        static std::mutex mu;
        return mu;
    }
    int n_;
    fftw_plan plan_;
};

struct DiskAction {
    cplx al, be, ga, de;
    double theta;
    cplx move(cplx w) const { return (al * w + be) / (ga * w + de); }
    // log(gamma w + delta) on the lifted branch
    cplx log_mult(cplx w) const { return cplx(std::log(std::abs(de)), theta) + std::log(1.0 + ga / de * w); }
};

DiskAction disk_action(const CoveredElement& g) {
    auto T = g.disk_matrix();
    return {T[0][0], T[0][1], T[1][0], T[1][1], g.theta};
}

}  // namespace

Mat2 mul(const Mat2& a, const Mat2& b) {
    Mat2 r{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
    return r;
}

Mat2 inverse(const Mat2& a) { return {{{a[1][1], -a[0][1]}, {-a[1][0], a[0][0]}}}; }

double det(const Mat2& a) { return a[0][0] * a[1][1] - a[0][1] * a[1][0]; }

Mat2 exp_sl2(const Mat2& x) {
    if (std::abs(x[0][0] + x[1][1]) > 1e-12 * (1 + std::abs(x[0][0]))) throw std::invalid_argument("exp_sl2: matrix is not traceless");
    double d = x[0][0] * x[0][0] + x[0][1] * x[1][0];  // X^2 = d I
    double c, s;
    if (std::abs(d) < 1e-8) {
        c = 1 + d / 2 + d * d / 24;
        s = 1 + d / 6 + d * d / 120;
    } else if (d > 0) {
        double q = std::sqrt(d);
        c = std::cosh(q);
        s = std::sinh(q) / q;
    } else {
        double q = std::sqrt(-d);
        c = std::cos(q);
        s = std::sin(q) / q;
    }
    return {{{c + s * x[0][0], s * x[0][1]}, {s * x[1][0], c + s * x[1][1]}}};
}

GroupParams GroupParams::parse(const std::string& text) {
    GroupParams p;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("bad group parameter: " + item);
        std::string key = item.substr(0, eq), val = item.substr(eq + 1);
        if (key == "w")
            p.w = parse_complex(val);
        else if (key == "r")
            p.r = parse_double(val);
        else
            throw std::invalid_argument("unknown group parameter: " + key);
    }
    return p;
}

std::string GroupParams::str() const {
    std::ostringstream os;
    os.precision(17);
    os << "w=" << w.real() << (w.imag() < 0 ? "" : "+") << w.imag() << "i,r=" << r;
    return os.str();
}

Mat2 sl2_generator(const GroupParams& p) {
    // (u(e+f) - v h)/sqrt2 - r(e-f)/2
    double u = p.w.real(), v = p.w.imag(), k = 1 / std::sqrt(2.0);
    return {{{-v * k, u * k - p.r / 2}, {u * k + p.r / 2, v * k}}};
}

Mat2c CoveredElement::disk_matrix() const {
    Mat2 si = inverse(S);
    // C = [[1,-i],[1,i]], C^-1 = [[1/2, 1/2],[i/2, -i/2]]
    Mat2c c{{{1.0, -I}, {1.0, I}}};
    Mat2c ci{{{0.5, 0.5}, {0.5 * I, -0.5 * I}}};
    Mat2c t1{}, t{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) t1[i][j] = c[i][0] * si[0][j] + c[i][1] * si[1][j];
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) t[i][j] = t1[i][0] * ci[0][j] + t1[i][1] * ci[1][j];
    return t;
}

CoveredElement CoveredElement::from_matrix(const Mat2& s, int cover) {
    if (std::abs(det(s) - 1) > 1e-12) throw std::invalid_argument("matrix is not in SL(2,R)");
    CoveredElement g;
    g.S = s;
    g.cover = cover;
    g.theta = std::arg(g.disk_matrix()[1][1]);
    return g;
}

CoveredElement CoveredElement::compose(const CoveredElement& o) const {
    auto tg = disk_matrix(), to = o.disk_matrix();
    CoveredElement r;
    r.S = mul(S, o.S);
    r.cover = cover;
    r.theta = theta + o.theta + std::arg(1.0 + to[1][0] * tg[0][1] / (to[1][1] * tg[1][1]));
    return r;
}

long CoveredElement::sheet() const {
    double base = std::arg(disk_matrix()[1][1]);
    long k = std::lround((theta - base) / (2 * pi));
    if (cover > 0) k = ((k % cover) + cover) % cover;
    return k;
}

nlohmann::json CoveredElement::to_json() const {
    return {{"S", {{S[0][0], S[0][1]}, {S[1][0], S[1][1]}}}, {"theta", theta}, {"cover", cover}, {"sheet", sheet()}};
}

CoveredElement sl2_from_params(const GroupParams& p, int cover) {
    Mat2 x = sl2_generator(p);
    double norm = std::sqrt(x[0][0] * x[0][0] + x[0][1] * x[0][1] + x[1][0] * x[1][0] + x[1][1] * x[1][1]);
    int steps = 32 + 16 * static_cast<int>(std::ceil(norm));
    // follow arg(delta) along exp(tX) to fix the sheet
    CoveredElement g;
    g.cover = cover;
    double prev = 0, theta = 0;
    for (int k = 1; k <= steps; ++k) {
        double t = double(k) / steps;
        Mat2 xt{{{x[0][0] * t, x[0][1] * t}, {x[1][0] * t, x[1][1] * t}}};
        g.S = exp_sl2(xt);
        double a = std::arg(g.disk_matrix()[1][1]);
        double d = a - prev;
        d -= 2 * pi * std::round(d / (2 * pi));
        theta += d;
        prev = a;
    }
    g.theta = theta;
    return g;
}

Mat2 Iwasawa::reassemble() const {
    Mat2 k{{{std::cos(theta), -std::sin(theta)}, {std::sin(theta), std::cos(theta)}}};
    Mat2 a2{{{a, 0}, {0, 1 / a}}};
    Mat2 n2{{{1, n}, {0, 1}}};
    return mul(k, mul(a2, n2));
}

Iwasawa iwasawa_decompose(const Mat2& s) {
    if (std::abs(det(s) - 1) > 1e-10) throw std::invalid_argument("iwasawa_decompose: det != 1");
    // Gram-Schmidt on the columns: S = K R, R = [[a, a n], [0, 1/a]]
    double a = std::hypot(s[0][0], s[1][0]);
    double q0 = s[0][0] / a, q1 = s[1][0] / a;
    double r01 = q0 * s[0][1] + q1 * s[1][1];
    Iwasawa w;
    w.theta = std::atan2(q1, q0);
    w.a = a;
    w.n = r01 / a;
    return w;
}

cplx cayley(cplx z) {
    if (z == -I) throw std::domain_error("cayley: pole at z = -i");
    return (z - I) / (z + I);
}

cplx cayley_inverse(cplx w) {
    if (w == 1.0) throw std::domain_error("cayley_inverse: pole at w = 1");
    return I * (1.0 + w) / (1.0 - w);
}

Jet jet_var(cplx x) { return {x, 1, 0}; }
Jet operator+(const Jet& a, const Jet& b) { return {a.v + b.v, a.d1 + b.d1, a.d2 + b.d2}; }
Jet operator*(const Jet& a, const Jet& b) { return {a.v * b.v, a.d1 * b.v + a.v * b.d1, a.d2 * b.v + 2.0 * a.d1 * b.d1 + a.v * b.d2}; }
Jet operator*(cplx c, const Jet& a) { return {c * a.v, c * a.d1, c * a.d2}; }

Jet jet_pow(const Jet& u, cplx e) {
    cplx p = std::pow(u.v, e);
    cplx p1 = e * p / u.v;
    cplx p2 = e * (e - 1.0) * p / (u.v * u.v);
    return {p, p1 * u.d1, p2 * u.d1 * u.d1 + p1 * u.d2};
}

Jet jet_exp(const Jet& u) {
    cplx e = std::exp(u.v);
    return {e, e * u.d1, e * (u.d1 * u.d1 + u.d2)};
}

cplx FirstOrderOp::apply(const Jet& f, cplx z) const {
    cplx P = p[0] + z * (p[1] + z * p[2]);
    cplx Qz = q[0] + z * (q[1] + z * q[2]);
    return P * f.d1 + Qz * f.v;
}

std::pair<cplx, cplx> FirstOrderOp::apply_jet(const Jet& f, cplx z) const {
    cplx P = p[0] + z * (p[1] + z * p[2]), dP = p[1] + 2.0 * z * p[2];
    cplx Qz = q[0] + z * (q[1] + z * q[2]), dQ = q[1] + 2.0 * z * q[2];
    return {P * f.d1 + Qz * f.v, dP * f.d1 + P * f.d2 + dQ * f.v + Qz * f.d1};
}

OperatorTriple differential_operators(cplx s) {
    const cplx c = 1 / (2 * std::sqrt(2.0));
    OperatorTriple t;
    t.j3.p = {-0.5 * I, 0.0, -0.5 * I};
    t.j3.q = {0.0, -I * s, 0.0};
    // -i (z - i)^2 = -i z^2 - 2 z + i
    t.jp.p = {c * I, -2.0 * c, -c * I};
    t.jp.q = {-2.0 * c * s, -2.0 * c * I * s, 0.0};
    // -i (z + i)^2 = -i z^2 + 2 z + i
    t.jm.p = {c * I, 2.0 * c, -c * I};
    t.jm.q = {2.0 * c * s, -2.0 * c * I * s, 0.0};
    return t;
}

double discrete_an(double s, int n) {
    double a0 = std::sqrt((2 * s - 1) / pi) * std::pow(2.0, 2 * s - 1);
    return a0 / std::pow(std::sqrt(2.0), n) * std::exp(std::lgamma(2 * s + n) - std::lgamma(2 * s));
}

Jet discrete_basis_jet(double s, int n, cplx z) {
    if (!(z.imag() > 0)) throw std::domain_error("discrete basis functions live on the upper half-plane");
    if (!(s > 0)) throw std::domain_error("discrete series needs s > 0");
    if (n < 0) throw std::domain_error("basis index must be nonnegative");
    Jet zj = jet_var(z);
    Jet num = jet_pow(zj + Jet{-I, 0, 0}, double(n));
    Jet den = jet_pow(zj + Jet{I, 0, 0}, -(2 * s + n));
    // A_n carries (2s-1)^{1/2}; for s <= 1/2 keep the s > 1/2 shape via |2s-1|
    double an = s > 0.5 ? discrete_an(s, n)
                        : std::pow(2.0, 2 * s - 1) / std::sqrt(pi) / std::pow(std::sqrt(2.0), n) *
                              std::exp(std::lgamma(2 * s + n) - std::lgamma(2 * s));
    return an * (num * den);
}

DiscreteValue discrete_basis_value(double s, int n, cplx z) { return {discrete_basis_jet(s, n, z).v, s <= 1}; }

Jet principal_basis_jet(cplx s, double m, double x) {
    // pi^{-1/2} (1+x^2)^{-s} exp(2 i m arctan x)
    cplx xc = x;
    Jet base{1.0 + xc * xc, 2.0 * xc, 2.0};
    Jet at{std::atan(x), 1 / (1 + x * x), -2 * x / ((1 + x * x) * (1 + x * x))};
    return (1 / std::sqrt(pi)) * (jet_pow(base, -s) * jet_exp((2.0 * I * m) * at));
}

cplx principal_basis_value(cplx s, double m, double x) { return principal_basis_jet(s, m, x).v; }

double discrete_norm_sq_quadrature(double s, int n, double tol) {
    if (!(s > 0.5)) throw std::domain_error("the norm integral diverges for s <= 1/2");
    boost::math::quadrature::sinh_sinh<double> inner;
    boost::math::quadrature::exp_sinh<double> outer;
    const double an = discrete_an(s, n);
    auto fy = [&](double y) {
        if (!(y > 0) || !std::isfinite(y)) return 0.0;
        // |z - i|^2 / |z + i|^2 = 1 - 4y / d with d = |z + i|^2; finite for any x
        auto fx = [&](double x) {
            double d = x * x + (y + 1) * (y + 1);
            if (!std::isfinite(d)) return 0.0;
            return an * an * std::pow(1 - 4 * y / d, n) * std::pow(d, -2 * s);
        };
        double in = inner.integrate(fx, tol);
        return in == 0 ? 0.0 : std::pow(y, 2 * s - 2) * in;
    };
    return outer.integrate(fy, tol);
}

double discrete_norm_ratio(double s, int n) { return std::exp(-n * std::log(2.0) + std::lgamma(n + 1.0) + std::lgamma(2 * s + n) - std::lgamma(2 * s)); }

double disk_monomial_norm_quadrature(double s, int n) {
    if (!(s > 0.5)) throw std::domain_error("the disk norm integral diverges for s <= 1/2");
    // angular integral is 2 pi; radial in t = r^2
    std::vector<double> t, w;
    gauss_jacobi01(n + 8, 2 * s - 2, t, w);
    double acc = 0;
    for (size_t k = 0; k < t.size(); ++k) acc += w[k] * std::pow(t[k], n);
    return pi * acc;
}

double disk_monomial_norm(double s, int n) {
    return pi / (2 * s - 1) * std::exp(std::lgamma(2 * s) + std::lgamma(n + 1.0) - std::lgamma(2 * s + n));
}

cplx principal_inner_quadrature(cplx s, double m1, double m2) {
    boost::math::quadrature::sinh_sinh<double> q;
    auto val = [&](double m, double x) { return std::abs(x) > 1e100 ? cplx(0) : principal_basis_value(s, m, x); };
    auto re = [&](double x) { return (std::conj(val(m1, x)) * val(m2, x)).real(); };
    auto im = [&](double x) { return (std::conj(val(m1, x)) * val(m2, x)).imag(); };
    return {q.integrate(re, 1e-12), q.integrate(im, 1e-12)};
}

double principal_norm_quadrature(cplx s, double m) { return principal_inner_quadrature(s, m, m).real(); }

double DiffOpReport::max() const { return std::max({eigen, ladder_up, ladder_down, casimir, bracket}); }

nlohmann::json DiffOpReport::to_json() const {
    return {{"model", model == Model::discrete ? "discrete" : "principal"},
            {"s", {s.real(), s.imag()}},
            {"m", m},
            {"points", points},
            {"eigen", eigen},
            {"ladder_up", ladder_up},
            {"ladder_down", ladder_down},
            {"casimir", casimir},
            {"bracket", bracket}};
}

DiffOpReport differential_op_check(Model model, cplx s, double m) {
    DiffOpReport rep;
    rep.model = model;
    rep.s = s;
    rep.m = m;
    auto ops = differential_operators(s);
    std::vector<cplx> grid;
    if (model == Model::discrete) {
        if (s.imag() != 0 || s.real() <= 0) throw std::domain_error("discrete model needs real s > 0");
        if (m < 0 || m != std::floor(m)) throw std::domain_error("discrete model needs a basis index n >= 0");
        for (double x : {-2.0, -0.5, 0.3, 1.7})
            for (double y : {0.3, 1.0, 2.5}) grid.emplace_back(x, y);
    } else {
        for (double x : {-3.0, -1.2, -0.4, 0.0, 0.25, 0.9, 2.2, 5.0}) grid.emplace_back(x, 0.0);
    }
    auto basis = [&](double k, cplx z) -> Jet {
        if (model == Model::discrete) {
            if (k < 0) return {0, 0, 0};
            return discrete_basis_jet(s.real(), static_cast<int>(k), z);
        }
        return principal_basis_jet(s, k, z.real());
    };
    double scale = 0;
    for (auto z : grid) scale = std::max(scale, std::abs(basis(m, z).v));
    int n = static_cast<int>(m);
    const cplx r2 = std::sqrt(2.0);
    for (auto z : grid) {
        Jet f = basis(m, z);
        cplx lam = model == Model::discrete ? s + m : cplx(m);
        rep.eigen = std::max(rep.eigen, std::abs(ops.j3.apply(f, z) - lam * f.v) / scale);
        cplx up, down;
        if (model == Model::discrete) {
            up = basis(m + 1, z).v;
            down = n == 0 ? cplx(0) : 0.5 * double(n) * (2.0 * s - 1.0 + double(n)) * basis(m - 1, z).v;
        } else {
            up = -(m + s) / r2 * basis(m + 1, z).v;
            down = -(m - s) / r2 * basis(m - 1, z).v;
        }
        rep.ladder_up = std::max(rep.ladder_up, std::abs(ops.jp.apply(f, z) - up) / scale);
        rep.ladder_down = std::max(rep.ladder_down, std::abs(ops.jm.apply(f, z) - down) / scale);

        // second-order relations through the jets of the images
        auto j3f = ops.j3.apply_jet(f, z), jpf = ops.jp.apply_jet(f, z), jmf = ops.jm.apply_jet(f, z);
        auto again = [&](const FirstOrderOp& op, std::pair<cplx, cplx> g) { return op.apply(Jet{g.first, g.second, 0}, z); };
        cplx omega = again(ops.j3, j3f) - again(ops.jp, jmf) - again(ops.jm, jpf);
        rep.casimir = std::max(rep.casimir, std::abs(omega - s * (s - 1.0) * f.v) / scale);
        double br = 0;
        br = std::max(br, std::abs(again(ops.j3, jpf) - again(ops.jp, j3f) - jpf.first));
        br = std::max(br, std::abs(again(ops.j3, jmf) - again(ops.jm, j3f) + jmf.first));
        br = std::max(br, std::abs(again(ops.jp, jmf) - again(ops.jm, jpf) + j3f.first));
        rep.bracket = std::max(rep.bracket, br / scale);
        ++rep.points;
    }
    return rep;
}

cplx RepParams::s_complex() const {
    if (model == Model::discrete) return s;
    if (omega > -0.25) throw std::domain_error("principal series needs omega <= -1/4");
    return {0.5, 0.5 * std::sqrt(-1 - 4 * omega)};
}

nlohmann::json RepParams::to_json() const {
    if (model == Model::discrete) return {{"model", "discrete"}, {"s", s}};
    return {{"model", "principal"}, {"p", p}, {"omega", omega}};
}

double TruncatedOperatorMatrix::interior_defect() const {
    int lo = n_min + margin, hi = n_max - margin;
    double d = 0;
    for (int a = lo; a <= hi; ++a)
        for (int b = lo; b <= hi; ++b) {
            cplx acc = 0;
            for (int k = n_min; k <= n_max; ++k) acc += std::conj((*this)(k, a)) * (*this)(k, b);
            d = std::max(d, std::abs(acc - (a == b ? 1.0 : 0.0)));
        }
    return d;
}

double TruncatedOperatorMatrix::composition_defect(const TruncatedOperatorMatrix& o, const TruncatedOperatorMatrix& product) const {
    if (o.n_min != n_min || o.n_max != n_max || product.n_min != n_min || product.n_max != n_max)
        throw std::invalid_argument("composition_defect: index ranges differ");
    int lo = n_min + margin, hi = n_max - margin;
    double d = 0;
    for (int a = lo; a <= hi; ++a)
        for (int b = lo; b <= hi; ++b) {
            cplx acc = 0;
            for (int k = n_min; k <= n_max; ++k) acc += (*this)(a, k) * o(k, b);
            d = std::max(d, std::abs(acc - product(a, b)));
        }
    return d;
}

nlohmann::json TruncatedOperatorMatrix::to_json() const {
    nlohmann::json rows = nlohmann::json::array();
    for (int m = n_min; m <= n_max; ++m) {
        nlohmann::json row = nlohmann::json::array();
        for (int n = n_min; n <= n_max; ++n) row.push_back({(*this)(m, n).real(), (*this)(m, n).imag()});
        rows.push_back(row);
    }
    return {{"schema_version", 1},
            {"rep", rep.to_json()},
            {"n_min", n_min},
            {"n_max", n_max},
            {"margin", margin},
            {"interior", {n_min + margin, n_max - margin}},
            {"defect", defect},
            {"method", method},
            {"entries", rows}};
}

TruncatedOperatorMatrix group_matrix(const RepParams& rep, const CoveredElement& g, const GroupMatrixOptions& opt) {
    if (opt.range < 4) throw std::invalid_argument("group_matrix: range must be at least 4");
    const int N = opt.angular_nodes;
    if (N < 2 * opt.range + 8) throw std::invalid_argument("group_matrix: too few angular nodes for the range");
    TruncatedOperatorMatrix out;
    out.rep = rep;
    out.margin = opt.range / 4;
    DiskAction act = disk_action(g);
    Fft fft(N);
    std::vector<cplx> circle(N);
    for (int k = 0; k < N; ++k) circle[k] = std::polar(1.0, 2 * pi * k / N);

    if (rep.model == Model::discrete) {
        const double s = rep.s;
        if (!(s > 0)) throw std::domain_error("discrete series needs s > 0");
        out.n_min = 0;
        out.n_max = opt.range;
        bool radial = opt.disk == DiskMethod::radial || (opt.disk == DiskMethod::automatic && s > 0.5);
        if (radial && !(s > 0.5)) throw std::domain_error("radial disk quadrature needs s > 1/2");
        out.method = radial ? "disk: Gauss-Jacobi radial x FFT angular" : "disk: boundary Taylor coefficients (FFT)";
        std::vector<double> t, w;
        if (radial) gauss_jacobi01(opt.range / 2 + 12, 2 * s - 2, t, w);
        out.u.assign(out.size() * out.size(), 0);
        // g . w^n = (T w)^n (gamma w + delta)^{-2s}
        auto image = [&](int n, cplx z) { return std::pow(act.move(z), double(n)) * std::exp(-2 * s * act.log_mult(z)); };
        std::exception_ptr err;
        std::mutex err_mu;
#pragma omp parallel for schedule(dynamic) if (opt.exec == Exec::parallel)
        for (int n = out.n_min; n <= out.n_max; ++n) {
            try {
                std::vector<cplx> vals(N), coef;
                if (!radial) {
                    for (int k = 0; k < N; ++k) vals[k] = image(n, circle[k]);
                    fft.run(vals, coef);
                    for (int m = out.n_min; m <= out.n_max; ++m) out.at(m, n) = fft.coeff(coef, m) * lgamma_ratio_sqrt(s, m, n);
                } else {
                    std::vector<cplx> acc(out.size(), 0);
                    for (size_t j = 0; j < t.size(); ++j) {
                        double r = std::sqrt(t[j]);
                        for (int k = 0; k < N; ++k) vals[k] = image(n, r * circle[k]);
                        fft.run(vals, coef);
                        for (int m = out.n_min; m <= out.n_max; ++m) acc[m] += w[j] * std::pow(r, m) * fft.coeff(coef, m);
                    }
                    double nn = disk_monomial_norm(s, n);
                    for (int m = out.n_min; m <= out.n_max; ++m) out.at(m, n) = pi * acc[m] / std::sqrt(nn * disk_monomial_norm(s, m));
                }
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mu);
                if (!err) err = std::current_exception();
            }
        }
        if (err) std::rethrow_exception(err);
    } else {
        const cplx s = rep.s_complex();
        const double p = rep.p;
        if (!(p >= 0 && p < 1)) throw std::domain_error("principal series offset p must lie in [0,1)");
        out.n_min = -opt.range;
        out.n_max = opt.range;
        out.method = "circle: FFT of the boundary action (line model via x = tan(theta/2))";
        out.u.assign(out.size() * out.size(), 0);
        // g . w^n = (T w)^n |gamma w + delta|^{-2s} e^{-2 i p arg(gamma w + delta)}
        auto image = [&](int n, cplx z) {
            cplx lm = act.log_mult(z);
            return std::pow(act.move(z), double(n)) * std::exp(-2.0 * s * lm.real() - 2.0 * I * p * lm.imag());
        };
#pragma omp parallel for schedule(dynamic) if (opt.exec == Exec::parallel)
        for (int n = out.n_min; n <= out.n_max; ++n) {
            std::vector<cplx> vals(N), coef;
            for (int k = 0; k < N; ++k) vals[k] = image(n, circle[k]);
            fft.run(vals, coef);
            // the line-model basis phi_{p+n} corresponds to (-w)^n on the circle
            for (int m = out.n_min; m <= out.n_max; ++m) out.at(m, n) = ((m - n) % 2 == 0 ? 1.0 : -1.0) * fft.coeff(coef, m);
        }
    }
    out.defect = out.interior_defect();
    if (!(out.defect <= opt.tol)) {
        std::ostringstream os;
        os << "group_matrix: interior unitarity defect " << out.defect << " exceeds tolerance " << opt.tol;
        throw std::runtime_error(os.str());
    }
    return out;
}

nlohmann::json CoverPhase::to_json() const {
    nlohmann::json ph = nlohmann::json::array();
    for (auto c : phases) ph.push_back({c.real(), c.imag()});
    return {{"s", to_string(s)},
            {"turns", turns},
            {"phases", ph},
            {"identity", identity},
            {"minus_identity", minus_identity},
            {"first_identity_turns", first_identity_turns},
            {"numeric_error", numeric_error}};
}

CoverPhase cover_phase(const Q& s, int turns, int basis_size) {
    if (s <= 0) throw std::domain_error("cover_phase: s must be positive");
    if (turns < 0) throw std::invalid_argument("cover_phase: turns must be nonnegative");
    CoverPhase c;
    c.s = s;
    c.turns = turns;
    c.first_identity_turns = s.get_den().get_si();
    // exp(i r J3) with r = 2 pi turns, lifted along the path
    auto g = sl2_from_params({0, 2 * pi * turns});
    GroupMatrixOptions opt;
    opt.range = std::max(4, basis_size);
    opt.disk = DiskMethod::boundary;
    opt.angular_nodes = 64;
    opt.tol = 1e-8;
    opt.exec = Exec::serial;
    auto u = group_matrix({Model::discrete, s.get_d(), 0, -1}, g, opt);
    c.identity = c.minus_identity = true;
    for (int n = 0; n < basis_size; ++n) {
        cplx ph = u(n, n);
        c.phases.push_back(ph);
        cplx expect = std::polar(1.0, 2 * pi * turns * (s.get_d() + n));
        c.numeric_error = std::max(c.numeric_error, std::abs(ph - expect));
        for (int m = 0; m < basis_size; ++m)
            if (m != n) c.numeric_error = std::max(c.numeric_error, std::abs(u(m, n)));
        c.identity = c.identity && std::abs(ph - 1.0) < 1e-9;
        c.minus_identity = c.minus_identity && std::abs(ph + 1.0) < 1e-9;
    }
    return c;
}

double complementary_prefactor(double s) {
    double a = 2 * s - 2;
    return std::pow(2.0, -a) * std::pow(pi, -1 - a) * std::tgamma(1 + a) * std::sin(pi * std::abs(a) / 2);
}

cplx complementary_inner_product(const std::function<cplx(double)>& a, const std::function<cplx(double)>& b, double s) {
    if (!(s > 0.5 && s < 1)) throw std::domain_error("complementary inner product needs 1/2 < s < 1");
    double beta = 1 - 2 * s;  // exponent of |k|, in (-1, 0)
    double e = 1 / (1 + beta);
    // k = u^e removes the singularity at k = 0
    boost::math::quadrature::exp_sinh<double> q;
    auto half = [&](double sign, bool imag) {
        auto f = [&](double u) {
            if (u <= 0) return 0.0;
            double k = sign * std::pow(u, e);
            if (!(std::abs(k) < 1e100)) return 0.0;  // profiles are required to decay
            cplx v = std::conj(a(k)) * b(k);
            return imag ? v.imag() : v.real();
        };
        double err = 0;
        double r = q.integrate(f, 1e-12, &err);
        if (!std::isfinite(r)) throw std::runtime_error("complementary inner product: divergent quadrature");
        return r * e;
    };
    cplx integral(half(1, false) + half(-1, false), half(1, true) + half(-1, true));
    return complementary_prefactor(s) * integral;
}

cplx fourier_apply(const FirstOrderOp& op, const Jet& a, double k) {
    // x -> (i / 2 pi) d/dk, d/dx -> 2 pi i k
    const cplx X = I / (2 * pi), D = 2 * pi * I;
    cplx b0 = D * k * a.v, b1 = D * (a.v + k * a.d1), b2 = D * (2.0 * a.d1 + k * a.d2);
    return op.p[0] * b0 + op.p[1] * X * b1 + op.p[2] * X * X * b2 + op.q[0] * a.v + op.q[1] * X * a.d1 + op.q[2] * X * X * a.d2;
}

}  // namespace kmso21::unirep
