#include "spectra/io.hpp"

#include <sstream>

#include "spectra/errors.hpp"

namespace spectra::io {

using nlohmann::json;

namespace {

geom::AxisBC axis_bc_from_string(const std::string& s) {
  if (s == "dirichlet_both") return geom::AxisBC::DirichletBoth;
  if (s == "neumann_both") return geom::AxisBC::NeumannBoth;
  if (s == "mixed") return geom::AxisBC::Mixed;
  throw ValidationError("shape json: unknown axis_bc '" + s + "'");
}

}  // namespace

json shape_to_json(const geom::Shape& shape) {
  return std::visit(
      [](const auto& s) -> json {
        using T = std::decay_t<decltype(s)>;
        json j;
        if constexpr (std::is_same_v<T, geom::Cuboid>) {
          j["kind"] = "cuboid";
          j["sides"] = s.sides();
          json bcs = json::array();
          for (auto bc : s.axis_bc()) bcs.push_back(geom::to_string(bc));
          j["axis_bc"] = bcs;
        } else if constexpr (std::is_same_v<T, geom::Ball>) {
          j["kind"] = "ball";
          j["radius"] = s.radius;
          j["dim"] = s.d;
        } else if constexpr (std::is_same_v<T, geom::ConvexPolygon>) {
          j["kind"] = "polygon";
          json verts = json::array();
          for (auto v : s.vertices()) verts.push_back({v.x, v.y});
          j["vertices"] = verts;
        } else {
          j["kind"] = "profile";
          j["xs"] = s.xs();
          j["h_plus"] = s.h_plus();
          j["h_minus"] = s.h_minus();
          j["lipschitz"] = s.lipschitz();
        }
        return j;
      },
      shape);
}

geom::Shape shape_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind"))
    throw ValidationError("shape json: missing 'kind'");
  const std::string kind = j.at("kind").get<std::string>();
  try {
    if (kind == "cuboid") {
      auto sides = j.at("sides").get<std::vector<double>>();
      std::vector<geom::AxisBC> bcs;
      for (const auto& b : j.at("axis_bc"))
        bcs.push_back(axis_bc_from_string(b.get<std::string>()));
      return geom::Cuboid(std::move(sides), std::move(bcs));
    }
    if (kind == "ball") {
      geom::Ball b;
      b.radius = j.at("radius").get<double>();
      b.d = j.at("dim").get<int>();
      if (!(b.radius > 0.0) || b.d < 1)
        throw ValidationError("shape json: bad ball parameters");
      return b;
    }
    if (kind == "polygon") {
      std::vector<geom::Vec2> verts;
      for (const auto& v : j.at("vertices"))
        verts.push_back({v.at(0).get<double>(), v.at(1).get<double>()});
      return geom::ConvexPolygon(std::move(verts));
    }
    if (kind == "profile") {
      return geom::ProfileDomain(j.at("xs").get<std::vector<double>>(),
                                 j.at("h_plus").get<std::vector<double>>(),
                                 j.at("h_minus").get<std::vector<double>>(),
                                 j.at("lipschitz").get<double>());
    }
  } catch (const json::exception& e) {
    throw ValidationError(std::string("shape json: ") + e.what());
  }
  throw ValidationError("shape json: unknown kind '" + kind + "'");
}

namespace {

std::string source_string(cuboid::SpectrumSource src, double h) {
  switch (src) {
    case cuboid::SpectrumSource::ExactCuboid: return "exact_cuboid";
    case cuboid::SpectrumSource::ExactInterval: return "exact_interval";
    case cuboid::SpectrumSource::ExactDisk: return "exact_disk";
    case cuboid::SpectrumSource::Fem: return "fem(h=" + std::to_string(h) + ")";
  }
  return "?";
}

}  // namespace

json spectrum_to_json(const cuboid::Spectrum& s) {
  json j;
  j["bc"] = s.bc_descriptor;
  j["source"] = source_string(s.source, s.mesh_h);
  j["values"] = s.values;
  return j;
}

std::string spectrum_to_csv(const cuboid::Spectrum& s) {
  std::ostringstream out;
  out.precision(17);
  out << "k,eigenvalue\n";
  for (std::size_t i = 0; i < s.values.size(); ++i)
    out << (i + 1) << "," << s.values[i] << "\n";
  return out.str();
}

json mesh_to_json(const fem::Mesh& mesh) {
  json j;
  json nodes = json::array();
  for (auto p : mesh.nodes) nodes.push_back({p.x, p.y});
  j["nodes"] = nodes;
  json tris = json::array();
  for (const auto& t : mesh.triangles) tris.push_back({t[0], t[1], t[2]});
  j["triangles"] = tris;
  json edges = json::array();
  for (const auto& e : mesh.boundary_edges)
    edges.push_back({{"nodes", {e.nodes[0], e.nodes[1]}},
                     {"tag", e.tag == fem::EdgeTag::DirichletPart ? "dirichlet"
                                                                  : "neumann"}});
  j["boundary_edges"] = edges;
  j["h"] = mesh.h;
  return j;
}

fem::Mesh mesh_from_json(const json& j) {
  fem::Mesh mesh;
  try {
    for (const auto& p : j.at("nodes"))
      mesh.nodes.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
    for (const auto& t : j.at("triangles"))
      mesh.triangles.push_back(
          {t.at(0).get<int>(), t.at(1).get<int>(), t.at(2).get<int>()});
    for (const auto& e : j.at("boundary_edges")) {
      fem::BoundaryEdge be;
      be.nodes = {e.at("nodes").at(0).get<int>(), e.at("nodes").at(1).get<int>()};
      const std::string tag = e.at("tag").get<std::string>();
      if (tag == "dirichlet") be.tag = fem::EdgeTag::DirichletPart;
      else if (tag == "neumann") be.tag = fem::EdgeTag::NeumannPart;
      else throw ValidationError("mesh json: unknown edge tag '" + tag + "'");
    mesh.boundary_edges.push_back(be);
    }
    mesh.h = j.at("h").get<double>();
  } catch (const json::exception& e) {
    throw ValidationError(std::string("mesh json: ") + e.what());
  }
  try {
    mesh.validate();
  } catch (const MeshFailure& e) {
    // Malformed input data, not a numerical breakdown.
    throw ValidationError(std::string("mesh json: ") + e.what());
  }
  return mesh;
}

json certificate_to_json(const bounds::BoundCertificate& cert) {
  json j;
  j["kind"] = bounds::to_string(cert.kind);
  j["alpha_or_k"] = cert.alpha_or_k;
  j["value"] = cert.value;
  j["n"] = cert.n;
  j["d"] = cert.d;
  if (cert.mu_star != 0.0) j["mu_star"] = cert.mu_star;
  if (cert.lambda_star != 0.0) j["lambda_star"] = cert.lambda_star;
  if (cert.kappa_n != 0) j["kappa_n"] = cert.kappa_n;
  j["quermass"] = {{"d", cert.quermass.d},
                   {"volume", cert.quermass.volume},
                   {"surface", cert.quermass.surface},
                   {"s", cert.quermass.s},
                   {"omega_d", cert.quermass.omega_d}};
  if (!cert.note.empty()) j["note"] = cert.note;
  return j;
}

}  // namespace spectra::io
