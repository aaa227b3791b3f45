#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <random>

#include <cartan/assembly.hpp>
#include <cartan/curve.hpp>
#include <cartan/errors.hpp>
#include <cartan/numerics.hpp>
#include <cartan/ribbon.hpp>
#include <cartan/surface.hpp>
#include <cartan/topology.hpp>

using namespace cartan;

namespace {

std::shared_ptr<const ParametricSurface> share(ParametricSurface s) {
    return std::make_shared<const ParametricSurface>(std::move(s));
}

Ribbonization closed_cylinder_band(bool closed) {
    auto cyl = share(builtin_surface("cylinder", {1.5, 8.0}));
    auto path = [](double t) { return PathJet{Jet1::variable(t), Jet1::constant(0.0)}; };
    CurveOnSurface c(cyl, path, -pi, pi, closed, closed ? "band" : "cut-band");
    return assemble({build_ribbon(c, 256, 0.8)}, 9);
}

}  // namespace

TEST_CASE("half-integer bookkeeping") {
    CHECK(HalfInt{4}.is_integer());
    CHECK(HalfInt{4} == HalfInt::whole(2));
    CHECK(HalfInt{4}.value() == 2.0);
    CHECK(HalfInt{4}.str() == "2");
    CHECK_FALSE(HalfInt{-1}.is_integer());
    CHECK(HalfInt{-1}.str() == "-1/2");
    CHECK(HalfInt{-1}.value() == -0.5);
}

TEST_CASE("degree route equals V - E + F on random counts") {
    std::mt19937 rng(20240817);
    std::uniform_int_distribution<long long> dist(1, 100000);
    for (int k = 0; k < 200; ++k) {
        const long long v = dist(rng), e = dist(rng), f = dist(rng);
        PolyEuler pe = polyhedron_euler(v, e, f);
        CHECK(pe.chi_vef == v - e + f);
        CHECK(pe.chi_degrees.is_integer());
        CHECK(pe.chi_degrees == HalfInt::whole(pe.chi_vef));
    }
}

TEST_CASE("polyhedron meshes: cube and tetrahedron close to 2, torus grid to 0") {
    PolyMesh cube;
    cube.n_vertices = 8;
    cube.faces = {{0, 1, 2, 3}, {4, 5, 6, 7}, {0, 1, 5, 4},
                  {1, 2, 6, 5}, {2, 3, 7, 6}, {3, 0, 4, 7}};
    PolyEuler ce = polyhedron_euler(cube);
    CHECK(ce.chi_vef == 2);
    CHECK(ce.chi_degrees == HalfInt::whole(2));

    PolyMesh tetra;
    tetra.n_vertices = 4;
    tetra.faces = {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};
    PolyEuler te = polyhedron_euler(tetra);
    CHECK(te.chi_vef == 2);
    CHECK(te.chi_degrees == HalfInt::whole(2));

    PolyMesh grid;  // 4x4 doubly wrapped quad grid
    grid.n_vertices = 16;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            auto v = [](int a, int b) { return 4 * ((a + 4) % 4) + (b + 4) % 4; };
            grid.faces.push_back({v(i, j), v(i + 1, j), v(i + 1, j + 1), v(i, j + 1)});
        }
    PolyEuler ge = polyhedron_euler(grid);
    CHECK(ge.chi_vef == 0);
    CHECK(ge.chi_degrees == HalfInt::whole(0));

    // abstract degree route: cube corners have valence 3
    CHECK(euler_from_degrees(std::vector<int>(8, 3), 6) == HalfInt::whole(2));

    PolyMesh bad;
    bad.n_vertices = 3;
    bad.faces = {{0, 1}};
    CHECK_THROWS_AS(polyhedron_euler(bad), BadParams);
    bad.faces = {{0, 1, 99}};
    CHECK_THROWS_AS(polyhedron_euler(bad), BadParams);
}

TEST_CASE("vertex-free torus assembly: chi = 0 and the audit closes") {
    auto torus = share(builtin_surface("torus", {2, 1}));
    const int n = 512;
    std::vector<Ribbon> ribbons = {
        build_ribbon(make_torus_unknot(torus, 3, 1, 0.0), n, 1.6),
        build_ribbon(make_torus_unknot(torus, 3, 1, pi / 3), n, 1.6)};
    Ribbonization rz = assemble(std::move(ribbons), 17);

    WedgeGraph g = detect_vertices(rz);
    CHECK(g.vertices.empty());
    HalfInt chi = euler_characteristic(g);
    CHECK(chi.twice == 0);

    AuditReport audit = gauss_bonnet_audit(rz, g);
    CHECK(audit.chi_valid);
    CHECK(audit.chi.twice == 0);
    CHECK(std::abs(audit.ratio) < 0.02);
    CHECK(audit.pass);
}

TEST_CASE("isolated cone strip: apex cone point and disk-type audit") {
    const double R = 2.0, theta = 0.7;
    auto sphere = share(builtin_surface("sphere", {R}));
    Ribbonization rz = assemble({build_ribbon(make_latitude(sphere, theta), 256, 10.0)}, 17);
    CHECK(rz.wedges.empty());

    WedgeGraph g = detect_vertices(rz);
    REQUIRE(g.vertices.size() == 1);
    const Vertex& v = g.vertices[0];
    CHECK(v.degree == 0);
    CHECK(v.character == VertexCharacter::ConePoint);
    CHECK((v.position - Vec3(0, 0, R / std::cos(theta))).norm() < 1e-6);
    CHECK(v.cone_angle == doctest::Approx(2 * pi * std::cos(theta)).epsilon(1e-3));

    // degree 0 contributes a full unit to chi: the capped strip is a disk
    CHECK(euler_characteristic(g).twice == 2);
    AuditReport audit = gauss_bonnet_audit(rz, g);
    CHECK(audit.chi_valid);
    CHECK(audit.ratio == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(audit.pass);
}

TEST_CASE("cylinder band audits: closed to zero, cut-open to one turn") {
    Ribbonization closed_rz = closed_cylinder_band(true);
    WedgeGraph cg = detect_vertices(closed_rz);
    CHECK(cg.vertices.empty());
    AuditReport closed_audit = gauss_bonnet_audit(closed_rz, cg);
    CHECK(closed_audit.chi_valid);
    CHECK(std::abs(closed_audit.total) < 1e-3 * 2 * pi);
    CHECK(closed_audit.pass);

    Ribbonization open_rz = closed_cylinder_band(false);
    WedgeGraph og = detect_vertices(open_rz);
    AuditReport open_audit = gauss_bonnet_audit(open_rz, og);
    CHECK_FALSE(open_audit.chi_valid);  // open strip: boundary, no closed chi
    CHECK(std::abs(open_audit.total - 2 * pi) < 1e-3 * 2 * pi);
}

TEST_CASE("mirror-band pinch: four degree-1 vertices give chi = 2") {
    auto north = share(builtin_surface("ellipsoid-belt", {5, 4, 1}));
    auto south = share(builtin_surface("ellipsoid-belt", {5, 4, 1, -1}));
    const int n = 256;
    std::vector<Ribbon> rs = {build_ribbon(make_coordinate_loop(north, 3.799, "n-outer"), n, 1.5),
                              build_ribbon(make_coordinate_loop(south, 3.799, "s-outer"), n, 1.5)};
    Ribbonization rz = assemble(std::move(rs), 17);

    REQUIRE(rz.wedges.size() == 2);
    for (const WedgeSegment& w : rz.wedges) {
        CHECK(w.self_contact);
        CHECK_FALSE(w.closed);
    }

    WedgeGraph g = detect_vertices(rz);
    REQUIRE(g.vertices.size() == 4);
    for (const Vertex& v : g.vertices) {
        CHECK(v.degree == 1);
        CHECK(v.character == VertexCharacter::WedgeEnd);
        CHECK_FALSE(v.boundary);
        // endpoints sit near the symmetry plane y = 0, mirrored in x and z
        CHECK(std::abs(v.position.y()) < 0.05);
        CHECK(std::abs(v.position.x()) == doctest::Approx(1.005).epsilon(0.05));
        CHECK(std::abs(v.position.z()) == doctest::Approx(0.901).epsilon(0.05));
    }

    HalfInt chi = euler_characteristic(g);
    CHECK(chi.twice == 4);  // 4 * (2 - 1) / 2 = 2
    AuditReport audit = gauss_bonnet_audit(rz, g);
    CHECK(audit.chi_valid);
    CHECK(audit.ratio == doctest::Approx(2.0).epsilon(0.01));
    CHECK(audit.pass);

    // clustering radius of the same order as the vertex spacing is ambiguous
    Tolerances coarse;
    coarse.cluster = 1.0;
    CHECK_THROWS_AS(detect_vertices(rz, coarse), AmbiguousCluster);
}

TEST_CASE("audit demands angle data at every vertex") {
    Ribbonization rz = closed_cylinder_band(true);
    WedgeGraph g;
    Vertex v;
    v.degree = 1;
    v.character = VertexCharacter::WedgeEnd;
    g.vertices.push_back(v);  // no inner angles measured
    CHECK_THROWS_AS(gauss_bonnet_audit(rz, g), MissingAngles);
}

TEST_CASE("boundary vertices are excluded from chi and invalidate it") {
    WedgeGraph g;
    Vertex interior;
    interior.degree = 3;
    interior.inner_angles = {1.0, 2.0, 1.5};
    Vertex corner;
    corner.degree = 1;
    corner.boundary = true;
    corner.inner_angles = {0.7};
    g.vertices = {interior, corner};
    HalfInt chi = euler_characteristic(g);
    CHECK(chi.twice == -1);  // only the interior deg-3 vertex counts
    CHECK(chi.str() == "-1/2");

    CHECK(interior.outer_angles().size() == 3);
    CHECK(interior.outer_angles()[1] == doctest::Approx(pi - 2.0));
}
