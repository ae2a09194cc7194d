#include "oriperc/config.hpp"

#include <json.hpp>
#include <stdexcept>

namespace oriperc {

namespace {

const char* hexdigits = "0123456789abcdef";

nlohmann::json region_json(const Region& r) {
  nlohmann::json j;
  switch (r.kind()) {
    case Region::Kind::Box: j["kind"] = "box"; j["n"] = r.radius(); break;
    case Region::Kind::QuadrantBox: j["kind"] = "quad"; j["n"] = r.radius(); break;
    case Region::Kind::SlabBox: j["kind"] = "slab"; j["n"] = r.radius(); break;
    case Region::Kind::Annulus:
      j["kind"] = "ann"; j["n"] = r.inner(); j["m"] = r.radius(); break;
  }
  return j;
}

Region region_from_json(const nlohmann::json& j) {
  std::string kind = j.at("kind");
  if (kind == "box") return Region::box(j.at("n"));
  if (kind == "quad") return Region::quadrant(j.at("n"));
  if (kind == "slab") return Region::slab(j.at("n"));
  if (kind == "ann") return Region::annulus(j.at("n"), j.at("m"));
  throw std::invalid_argument("bad region kind: " + kind);
}

nlohmann::json model_json(const ModelSpec& m) {
  nlohmann::json j;
  j["law"] = law_name(m.law);
  if (m.law == Law::IndependentArcs) {
    j["a"] = m.a;
    j["b"] = m.b;
  } else {
    j["p"] = m.p;
  }
  return j;
}

ModelSpec model_from_json(const nlohmann::json& j) {
  Law law = law_from_name(j.at("law"));
  if (law == Law::IndependentArcs) return ModelSpec::arcs(j.at("a"), j.at("b"));
  ModelSpec m;
  m.law = law;
  m.p = j.at("p");
  return m;
}

void check_prob(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument(std::string(what) + " outside [0,1]");
}

}  // namespace

std::string BitVec::to_hex() const {
  int nbytes = (n_ + 7) / 8;
  std::string out(2 * nbytes, '0');
  for (int k = 0; k < nbytes; ++k) {
    unsigned byte = (w_[k >> 3] >> ((k & 7) * 8)) & 0xff;
    if (k == nbytes - 1 && n_ % 8) byte &= (1u << (n_ % 8)) - 1;
    out[2 * k] = hexdigits[byte >> 4];
    out[2 * k + 1] = hexdigits[byte & 0xf];
  }
  return out;
}

BitVec BitVec::from_hex(const std::string& hex, int n) {
  int nbytes = (n + 7) / 8;
  if (static_cast<int>(hex.size()) != 2 * nbytes)
    throw std::invalid_argument("hex bit string has wrong length");
  BitVec v(n);
  auto nibble = [](char c) -> unsigned {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    throw std::invalid_argument("bad hex digit");
  };
  for (int k = 0; k < nbytes; ++k) {
    unsigned byte = (nibble(hex[2 * k]) << 4) | nibble(hex[2 * k + 1]);
    v.w_[k >> 3] |= static_cast<uint64_t>(byte) << ((k & 7) * 8);
  }
  for (int i = n; i < 8 * nbytes; ++i)
    if (v.get(i)) throw std::invalid_argument("padding bits must be zero");
  return v;
}

std::shared_ptr<const RegionGeometry> shared_geometry(const Region& r) {
  return std::make_shared<const RegionGeometry>(r);
}

Config::Config(std::shared_ptr<const RegionGeometry> geo, ModelSpec model, BitVec bits)
    : geo_(std::move(geo)), model_(model), bits_(std::move(bits)) {
  if (bits_.size() != geo_->edge_count())
    throw std::invalid_argument("bit count does not match region edge count");
}

Config Config::sample(const ModelSpec& model, const Region& region, uint64_t seed) {
  return sample(model, shared_geometry(region), seed);
}

Config Config::sample(const ModelSpec& model, std::shared_ptr<const RegionGeometry> geo,
                      uint64_t seed) {
  if (model.law == Law::IndependentArcs)
    throw std::invalid_argument("independent-arc law samples an ArcSet, not a Config");
  check_prob(model.p, "p");
  if (!planar_law(model.law) && geo->region().planar())
    throw std::invalid_argument("slab law needs a slab region");
  Config c(geo, model, BitVec(geo->edge_count()));
  c.resample(seed);
  return c;
}

void Config::resample(uint64_t seed) {
  const auto& edges = geo_->edges();
  for (size_t i = 0; i < edges.size(); ++i) {
    bool coin = rng::coin(seed, sampling_key(edges[i]), rng::Stream::orient, model_.p);
    bits_.set(static_cast<int>(i), orient(model_, edges[i], coin).forward);
  }
}

std::string Config::to_json() const {
  nlohmann::json j;
  j["format"] = "oriperc-config-v1";
  j["region"] = region_json(region());
  j["model"] = model_json(model_);
  j["edges"] = edge_count();
  j["bits"] = bits_.to_hex();
  return j.dump();
}

Config Config::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  if (j.at("format") != "oriperc-config-v1") throw std::invalid_argument("bad config format");
  Region r = region_from_json(j.at("region"));
  auto geo = shared_geometry(r);
  if (j.at("edges") != geo->edge_count())
    throw std::invalid_argument("edge count mismatch in serialized config");
  return Config(geo, model_from_json(j.at("model")),
                BitVec::from_hex(j.at("bits"), geo->edge_count()));
}

ArcSet::ArcSet(std::shared_ptr<const RegionGeometry> geo, ModelSpec model, BitVec fwd, BitVec bwd)
    : geo_(std::move(geo)), model_(model), fwd_(std::move(fwd)), bwd_(std::move(bwd)) {
  if (fwd_.size() != geo_->edge_count() || bwd_.size() != geo_->edge_count())
    throw std::invalid_argument("bit count does not match region edge count");
}

ArcSet ArcSet::sample(double a, double b, const Region& region, uint64_t seed) {
  return sample(a, b, shared_geometry(region), seed);
}

ArcSet ArcSet::sample(double a, double b, std::shared_ptr<const RegionGeometry> geo,
                      uint64_t seed) {
  check_prob(a, "a");
  check_prob(b, "b");
  if (!geo->region().planar())
    throw std::invalid_argument("independent-arc law is planar");
  ArcSet s(geo, ModelSpec::arcs(a, b), BitVec(geo->edge_count()), BitVec(geo->edge_count()));
  s.resample(seed);
  return s;
}

void ArcSet::resample(uint64_t seed) {
  const auto& edges = geo_->edges();
  for (size_t i = 0; i < edges.size(); ++i) {
    uint64_t key = sampling_key(edges[i]);
    fwd_.set(static_cast<int>(i), rng::coin(seed, key, rng::Stream::arc_forward, model_.a));
    bwd_.set(static_cast<int>(i), rng::coin(seed, key, rng::Stream::arc_backward, model_.b));
  }
}

std::string ArcSet::to_json() const {
  nlohmann::json j;
  j["format"] = "oriperc-arcset-v1";
  j["region"] = region_json(region());
  j["model"] = model_json(model_);
  j["edges"] = edge_count();
  j["forward"] = fwd_.to_hex();
  j["backward"] = bwd_.to_hex();
  return j.dump();
}

ArcSet ArcSet::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  if (j.at("format") != "oriperc-arcset-v1") throw std::invalid_argument("bad arcset format");
  Region r = region_from_json(j.at("region"));
  auto geo = shared_geometry(r);
  if (j.at("edges") != geo->edge_count())
    throw std::invalid_argument("edge count mismatch in serialized arc set");
  return ArcSet(geo, model_from_json(j.at("model")),
                BitVec::from_hex(j.at("forward"), geo->edge_count()),
                BitVec::from_hex(j.at("backward"), geo->edge_count()));
}

}  // namespace oriperc
