#pragma once

// The built-in example systems used by the test suite and the `examples`
// subcommand: the affine line with double origin, the pair of glued plane
// charts (fig1), the five-chart blow-up system (fig2), and affine 3-space
// with doubled coordinate axes.

#include "prevar/system.hpp"

namespace prevar {

inline Cone mk_cone(int ambient, const std::vector<IntVec>& gens) {
    return cone_from_generators(ambient, gens);
}

// Two copies of the half-line glued along the torus only.
inline SystemOfFans double_origin_system() {
    Fan half = fan_from_cones(1, {mk_cone(1, {{1}})});
    return make_system({"1", "2"}, {half, half}, {{{0, 1}, zero_fan(1)}});
}

// Two 2-dim charts, sigma1 = cone((0,1),(1,-1)) and sigma2 = cone((1,0),(-1,-1)),
// glued along the torus only.
inline SystemOfFans fig1_system() {
    Fan f1 = fan_from_cones(2, {mk_cone(2, {{0, 1}, {1, -1}})});
    Fan f2 = fan_from_cones(2, {mk_cone(2, {{1, 0}, {-1, -1}})});
    return make_system({"1", "2"}, {f1, f2}, {{{0, 1}, zero_fan(2)}});
}

// Five 2-dim charts around the four rays (1,0), (1,1), (0,1), (-1,-1); the
// pair fans glue single rays or nothing, as the chart overlaps dictate.
inline SystemOfFans fig2_system() {
    auto two = [](int ax, int ay, int bx, int by) {
        return fan_from_cones(2, {cone_from_generators(2, {{ax, ay}, {bx, by}})});
    };
    auto ray = [](int x, int y) { return fan_from_cones(2, {cone_from_generators(2, {{x, y}})}); };
    std::vector<Fan> diag = {
        two(1, 0, 1, 1),    // chart 1
        two(0, 1, 1, 1),    // chart 2
        two(1, 0, 0, 1),    // chart 3
        two(1, 0, -1, -1),  // chart 4
        two(0, 1, -1, -1),  // chart 5
    };
    std::map<std::pair<int, int>, Fan> off;
    off[{0, 1}] = ray(1, 1);
    off[{0, 2}] = ray(1, 0);
    off[{0, 3}] = ray(1, 0);
    off[{0, 4}] = zero_fan(2);
    off[{1, 2}] = ray(0, 1);
    off[{1, 3}] = zero_fan(2);
    off[{1, 4}] = ray(0, 1);
    off[{2, 3}] = ray(1, 0);
    off[{2, 4}] = ray(0, 1);
    off[{3, 4}] = ray(-1, -1);
    return make_system({"1", "2", "3", "4", "5"}, std::move(diag), std::move(off));
}

// Two copies of the positive octant glued along its three rays.
inline SystemOfFans a3_doubled_system() {
    Fan octant = fan_from_cones(3, {mk_cone(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})});
    Fan axes = fan_from_cones(3, {mk_cone(3, {{1, 0, 0}}), mk_cone(3, {{0, 1, 0}}),
                                  mk_cone(3, {{0, 0, 1}})});
    return make_system({"1", "2"}, {octant, octant}, {{{0, 1}, axes}});
}

}  // namespace prevar
