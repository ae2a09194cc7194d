#include "oriperc/model.hpp"

#include <stdexcept>

namespace oriperc {

bool planar_law(Law law) {
  return law == Law::Grimmett2D || law == Law::HModel || law == Law::NEQuadrant ||
         law == Law::IndependentArcs;
}

std::string law_name(Law law) {
  switch (law) {
    case Law::Grimmett2D: return "grimmett";
    case Law::HModel: return "h";
    case Law::NEQuadrant: return "ne";
    case Law::Grimmett3DSlab: return "slab";
    case Law::IndependentArcs: return "arcs";
  }
  return {};
}

Law law_from_name(const std::string& name) {
  if (name == "grimmett") return Law::Grimmett2D;
  if (name == "h") return Law::HModel;
  if (name == "ne") return Law::NEQuadrant;
  if (name == "slab") return Law::Grimmett3DSlab;
  if (name == "arcs") return Law::IndependentArcs;
  throw std::invalid_argument("unknown model: " + name);
}

Arc orient(const ModelSpec& model, const Edge& edge, bool coin) {
  if (planar_law(model.law) && (edge.axis == Axis::Z || edge.tail.z != 0))
    throw std::invalid_argument("planar law applied to a 3D edge");
  switch (model.law) {
    case Law::Grimmett2D:
    case Law::NEQuadrant:
    case Law::Grimmett3DSlab:
      return {edge, coin};
    case Law::HModel:
      return {edge, coin == outward_is_forward(edge)};
    case Law::IndependentArcs:
      throw std::invalid_argument("independent-arc law has no single orientation");
  }
  throw std::invalid_argument("bad law");
}

}  // namespace oriperc
