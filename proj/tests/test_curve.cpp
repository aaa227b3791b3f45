#include <doctest.h>

#include <cmath>
#include <memory>

#include <cartan/curve.hpp>
#include <cartan/errors.hpp>
#include <cartan/numerics.hpp>
#include <cartan/surface.hpp>

using namespace cartan;

namespace {

std::shared_ptr<const ParametricSurface> share(ParametricSurface s) {
    return std::make_shared<const ParametricSurface>(std::move(s));
}

// circle of radius rho in the plane chart, counterclockwise
CurveOnSurface plane_circle(double rho, bool ccw = true) {
    auto plane = share(builtin_surface("plane"));
    const double s = ccw ? 1.0 : -1.0;
    auto path = [rho, s](double t) {
        Jet1 T = Jet1::variable(t);
        return PathJet{rho * cos(T), s * (rho * sin(T))};
    };
    return CurveOnSurface(plane, path, -pi, pi, true, "circle");
}

}  // namespace

TEST_CASE("straight line in the plane has vanishing invariants") {
    auto plane = share(builtin_surface("plane"));
    auto path = [](double t) { return PathJet{Jet1::variable(t), Jet1::constant(0.5)}; };
    CurveOnSurface line(plane, path, -2, 2, false, "line");
    for (double t : {-1.5, 0.0, 1.3}) {
        DarbouxSample d = darboux_frame(line, t);
        CHECK(d.kappa_g == doctest::Approx(0.0).epsilon(1e-14));
        CHECK(d.kappa_n == doctest::Approx(0.0).epsilon(1e-14));
        CHECK(d.tau_g == doctest::Approx(0.0).epsilon(1e-14));
        CHECK(d.speed == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(d.e.isApprox(Vec3(1, 0, 0), 1e-14));
        CHECK(d.n.isApprox(Vec3(0, 0, 1), 1e-14));
    }
}

TEST_CASE("plane circle: geodesic curvature is the signed inverse radius") {
    for (double rho : {0.5, 2.0}) {
        CurveOnSurface ccw = plane_circle(rho, true);
        CurveOnSurface cw = plane_circle(rho, false);
        for (double t : {0.0, 1.1, -2.0}) {
            DarbouxSample d = darboux_frame(ccw, t);
            CHECK(d.kappa_g == doctest::Approx(1.0 / rho).epsilon(1e-12));
            CHECK(d.kappa_n == doctest::Approx(0.0).epsilon(1e-12));
            CHECK(d.tau_g == doctest::Approx(0.0).epsilon(1e-12));
            CHECK(d.speed == doctest::Approx(rho).epsilon(1e-12));
            DarbouxSample m = darboux_frame(cw, t);
            CHECK(m.kappa_g == doctest::Approx(-1.0 / rho).epsilon(1e-12));
        }
    }
}

TEST_CASE("sphere latitude: kappa_g = cot(theta)/R, kappa_n = -1/R, tau_g = 0") {
    const double R = 2.0;
    auto sphere = share(builtin_surface("sphere", {R}));
    for (double theta : {0.4, pi / 2, 2.3}) {
        CurveOnSurface lat = make_latitude(sphere, theta);
        CHECK(lat.closed());
        for (double t : {0.0, 1.7}) {
            DarbouxSample d = darboux_frame(lat, t);
            CHECK(d.kappa_g == doctest::Approx(std::cos(theta) / (R * std::sin(theta)))
                                   .epsilon(1e-12));
            CHECK(d.kappa_n == doctest::Approx(-1.0 / R).epsilon(1e-12));
            CHECK(d.tau_g == doctest::Approx(0.0).epsilon(1e-12));
            CHECK(d.speed == doctest::Approx(R * std::sin(theta)).epsilon(1e-12));
        }
    }
}

TEST_CASE("torus outer equator is a geodesic curvature line with kappa_n = 1/(R+r)") {
    auto torus = share(builtin_surface("torus", {2, 1}));
    auto path = [](double t) { return PathJet{Jet1::constant(0), Jet1::variable(t)}; };
    CurveOnSurface eq(torus, path, -pi, pi, true, "outer-equator");
    DarbouxSample d = darboux_frame(eq, 0.9);
    CHECK(d.kappa_g == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(d.kappa_n == doctest::Approx(1.0 / 3.0).epsilon(1e-12));  // inward chart normal
    CHECK(d.tau_g == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(d.speed == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("cylinder helix: geodesic with pitch-dependent kappa_n and tau_g") {
    const double R = 1.5, c = 0.8;
    auto cyl = share(builtin_surface("cylinder", {R, 10.0}));
    auto path = [c](double t) {
        return PathJet{Jet1::variable(t), Jet1{c * t, c, 0}};
    };
    CurveOnSurface helix(cyl, path, -2, 2, false, "helix");
    const double s = std::sqrt(R * R + c * c);
    const double cosa = R / s, sina = c / s;
    for (double t : {-1.0, 0.3, 1.9}) {
        DarbouxSample d = darboux_frame(helix, t);
        CHECK(d.speed == doctest::Approx(s).epsilon(1e-12));
        CHECK(d.kappa_g == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(d.kappa_n == doctest::Approx(-cosa * cosa / R).epsilon(1e-12));
        CHECK(d.tau_g == doctest::Approx(sina * cosa / R).epsilon(1e-12));
    }
}

TEST_CASE("invariants do not depend on the parametrization speed") {
    auto torus = share(builtin_surface("torus", {2, 1}));
    auto slow = make_torus_unknot(torus, 2, 3);
    auto fast_path = [](double t) {
        Jet1 T{2 * t, 2, 0};
        return PathJet{2.0 * T, 3.0 * T};
    };
    CurveOnSurface fast(torus, fast_path, -pi / 2, pi / 2, true, "fast");
    for (double t : {-1.2, 0.0, 0.7}) {
        DarbouxSample a = darboux_frame(slow, t);
        DarbouxSample b = darboux_frame(fast, t / 2);
        CHECK((a.point - b.point).norm() < 1e-12);
        CHECK(b.speed == doctest::Approx(2 * a.speed).epsilon(1e-12));
        CHECK(b.kappa_g == doctest::Approx(a.kappa_g).epsilon(1e-10));
        CHECK(b.kappa_n == doctest::Approx(a.kappa_n).epsilon(1e-10));
        CHECK(b.tau_g == doctest::Approx(a.tau_g).epsilon(1e-10));
    }
}

TEST_CASE("flipping the chart normal flips kappa_g, kappa_n and keeps tau_g") {
    const double R = 1.5, c = 0.8;
    auto cyl = share(builtin_surface("cylinder", {R, 10.0}));
    // same cylinder with (u, v) swapped; the normal points the other way
    auto base = builtin_surface("cylinder", {R, 10.0});
    auto swapped_jet = [base](double u, double v) {
        SurfaceJet j = base.jet(v, u);
        std::swap(j.du, j.dv);
        std::swap(j.duu, j.dvv);
        return j;
    };
    auto cyl_flip = share(ParametricSurface("cylinder-swapped", swapped_jet,
                                            {-10, 10, -pi, pi, false, true}));
    auto path = [c](double t) { return PathJet{Jet1::variable(t), Jet1{c * t, c, 0}}; };
    auto path_flip = [c](double t) { return PathJet{Jet1{c * t, c, 0}, Jet1::variable(t)}; };
    CurveOnSurface helix(cyl, path, -2, 2, false);
    CurveOnSurface helix_flip(cyl_flip, path_flip, -2, 2, false);
    for (double t : {-1.4, 0.2, 1.8}) {
        DarbouxSample a = darboux_frame(helix, t);
        DarbouxSample b = darboux_frame(helix_flip, t);
        CHECK((a.point - b.point).norm() < 1e-12);
        CHECK((a.n + b.n).norm() < 1e-12);  // opposite normals
        CHECK(b.kappa_g == doctest::Approx(-a.kappa_g).epsilon(1e-10));
        CHECK(b.kappa_n == doctest::Approx(-a.kappa_n).epsilon(1e-10));
        CHECK(b.tau_g == doctest::Approx(a.tau_g).epsilon(1e-10));
    }
}

TEST_CASE("frame matrix is special orthogonal with h = n x e") {
    auto torus = share(builtin_surface("torus", {2, 1}));
    auto knot = make_torus_unknot(torus, 2, 3, 0.4);
    for (double t : {-2.9, -0.6, 0.0, 1.3, 3.0}) {
        DarbouxSample d = darboux_frame(knot, t);
        Mat3 D = frame_matrix(d);
        CHECK((D.transpose() * D - Mat3::Identity()).norm() < 1e-12);
        CHECK(D.determinant() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK((d.h - d.n.cross(d.e)).norm() < 1e-12);
    }
}

TEST_CASE("frame derivative follows the antisymmetric structure equations") {
    // D' = speed * D * L with L assembled from (kappa_g, kappa_n, tau_g);
    // verified against fourth-order finite differences of the frame itself.
    auto torus = share(builtin_surface("torus", {2, 1}));
    auto knot = make_torus_unknot(torus, 2, 3, 0.4);
    const int n = 2048;
    auto samples = sample_curve(knot, n);
    REQUIRE((int)samples.size() == n + 1);
    const double h = (knot.t1() - knot.t0()) / n;

    std::array<std::vector<double>, 9> entries;
    for (auto& e : entries) e.resize(samples.size());
    for (size_t i = 0; i < samples.size(); ++i) {
        Mat3 D = frame_matrix(samples[i]);
        for (int r = 0; r < 3; ++r)
            for (int cidx = 0; cidx < 3; ++cidx) entries[3 * r + cidx][i] = D(r, cidx);
    }
    std::array<std::vector<double>, 9> dentries;
    for (int k = 0; k < 9; ++k) dentries[k] = derivative_samples(entries[k], h, true);

    double worst = 0;
    for (size_t i = 0; i < samples.size(); ++i) {
        const DarbouxSample& d = samples[i];
        Mat3 L;
        L << 0, -d.kappa_g, -d.kappa_n,
             d.kappa_g, 0, -d.tau_g,
             d.kappa_n, d.tau_g, 0;
        Mat3 expected = d.speed * frame_matrix(d) * L;
        for (int r = 0; r < 3; ++r)
            for (int cidx = 0; cidx < 3; ++cidx)
                worst = std::max(worst,
                                 std::abs(dentries[3 * r + cidx][i] - expected(r, cidx)));
    }
    CHECK(worst < 1e-6);
}

TEST_CASE("spline paths interpolate their knots; closed splines wrap") {
    auto torus = share(builtin_surface("torus", {2, 1}));
    std::vector<Vec2> pts = {{0.0, 0.0}, {0.8, 1.0}, {0.2, 2.1}, {-0.5, 3.0}};
    CurveOnSurface open_sp = make_spline_path(torus, pts, false);
    CHECK(open_sp.t0() == doctest::Approx(0.0));
    CHECK(open_sp.t1() == doctest::Approx(3.0));
    for (size_t i = 0; i < pts.size(); ++i) {
        Vec2 p = open_sp.param_point((double)i);
        CHECK((p - pts[i]).norm() < 1e-12);
    }
    CurveOnSurface closed_sp = make_spline_path(torus, pts, true);
    CHECK(closed_sp.closed());
    CHECK(closed_sp.t1() == doctest::Approx(4.0));
    // periodic C2: frames at the seam agree
    DarbouxSample a = darboux_frame(closed_sp, 0.0);
    DarbouxSample b = darboux_frame(closed_sp, 4.0 - 1e-12);
    CHECK((frame_matrix(a) - frame_matrix(b)).norm() < 1e-6);
}

TEST_CASE("construction and sampling reject bad input") {
    auto plane = share(builtin_surface("plane"));
    auto open_path = [](double t) { return PathJet{Jet1::variable(t), Jet1::constant(0)}; };
    CHECK_THROWS_AS(CurveOnSurface(plane, open_path, 0, 1, true), NotClosed);

    auto cusp = [](double t) {
        Jet1 T = Jet1::variable(t);
        return PathJet{T * T * T, Jet1::constant(0)};
    };
    CurveOnSurface cusped(plane, cusp, -1, 1, false, "cusp");
    CHECK_THROWS_AS(darboux_frame(cusped, 0.0), IrregularCurve);
    CHECK_NOTHROW(darboux_frame(cusped, 0.5));

    CurveOnSurface line(plane, open_path, 0, 1, false);
    CHECK_THROWS_AS(sample_curve(line, 8), TooFewSamples);
}
