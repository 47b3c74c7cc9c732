#pragma once

#include <string>

#include <json.hpp>

#include "spectra/counting_bounds.hpp"
#include "spectra/cuboid_spectra.hpp"
#include "spectra/fem.hpp"
#include "spectra/geometry.hpp"

namespace spectra::io {

// Shape JSON schema:
//   {"kind":"cuboid","sides":[...],"axis_bc":["dirichlet_both",...]}
//   {"kind":"polygon","vertices":[[x,y],...]}
//   {"kind":"profile","xs":[...],"h_plus":[...],"h_minus":[...],"lipschitz":L}
//   {"kind":"ball","radius":r,"dim":d}
nlohmann::json shape_to_json(const geom::Shape& shape);
geom::Shape shape_from_json(const nlohmann::json& j);

nlohmann::json spectrum_to_json(const cuboid::Spectrum& s);
std::string spectrum_to_csv(const cuboid::Spectrum& s);  // header k,eigenvalue

nlohmann::json certificate_to_json(const bounds::BoundCertificate& cert);

// Mesh schema: {"nodes":[[x,y],...], "triangles":[[a,b,c],...],
//   "boundary_edges":[{"nodes":[u,v],"tag":"dirichlet"|"neumann"},...],
//   "h": max_edge_length}. Imported meshes are validated.
nlohmann::json mesh_to_json(const fem::Mesh& mesh);
fem::Mesh mesh_from_json(const nlohmann::json& j);

}  // namespace spectra::io
