#pragma once

#include <string>

#include "oriperc/geometry.hpp"

namespace oriperc {

enum class Law {
  Grimmett2D,      // right/up with probability p, translation symmetric
  HModel,          // away from the origin with probability p, rotation symmetric
  NEQuadrant,      // Grimmett law on quadrant regions (coincides with HModel there)
  Grimmett3DSlab,  // right/up/top with probability p on the slab
  IndependentArcs  // forward arc with prob a, backward arc with prob b, independently
};

struct ModelSpec {
  Law law = Law::Grimmett2D;
  double p = 0.5;
  double a = 0.0, b = 0.0;

  static ModelSpec grimmett(double p) { return {Law::Grimmett2D, p, 0, 0}; }
  static ModelSpec h(double p) { return {Law::HModel, p, 0, 0}; }
  static ModelSpec ne(double p) { return {Law::NEQuadrant, p, 0, 0}; }
  static ModelSpec slab(double p) { return {Law::Grimmett3DSlab, p, 0, 0}; }
  static ModelSpec arcs(double a, double b) { return {Law::IndependentArcs, 0, a, b}; }

  friend bool operator==(const ModelSpec&, const ModelSpec&) = default;
};

bool planar_law(Law law);
std::string law_name(Law law);
Law law_from_name(const std::string& name);

// True for the arc along `edge` that points away from the origin. Equivalent
// to comparing endpoint norms: norm2(head) - norm2(tail) = 2*t + 1 where t is
// the tail coordinate along the edge axis.
constexpr bool outward_is_forward(const Edge& e) {
  return axis_coord(e.tail, e.axis) >= 0;
}

// coin = true picks the probability-p outcome of the orientation law.
Arc orient(const ModelSpec& model, const Edge& edge, bool coin);

}  // namespace oriperc
