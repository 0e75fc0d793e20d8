#pragma once

// JSON serialization of bases ("basis documents", format_version "1") and of
// verification reports. Document layout:
//
//   {
//     "format_version": "1",
//     "d": 5,
//     "d_prime": 6,
//     "construction": {"kind": "theorem1", ...},
//     "states": [
//       {"label":[0,0],"coeffs":[[re,im],...]},     one line per state,
//       ...                                          row-major (k, l) order
//     ]
//   }
//
// Doubles are written in shortest round-trip form, so load(save(x)) restores
// every coefficient bit for bit and save(load(save(x))) == save(x).

#include <cstddef>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "umeb/verification.hpp"

namespace umeb::io {

using Json = nlohmann::ordered_json;

inline constexpr const char* kFormatVersion = "1";

/// Unparseable or schema-violating document.
class MalformedDocument : public std::runtime_error {
 public:
  explicit MalformedDocument(const std::string& what) : std::runtime_error(what) {}
};

inline Json provenance_to_json(const Provenance& p) {
  Json j;
  j["kind"] = to_string(p.kind);
  switch (p.kind) {
    case ConstructionKind::theorem1: {
      if (p.holes) {
        j["d"] = p.holes->d();
        j["d_prime"] = p.holes->d_prime();
        Json holes = Json::array();
        for (const auto& h : p.holes->holes()) holes.push_back({h.row, h.col});
        j["holes"] = holes;
      }
      if (p.canonical) {
        j["row_order"] = p.canonical->row_order;
        j["col_order"] = p.canonical->col_order;
        j["b"] = p.canonical->b;
      }
      break;
    }
    case ConstructionKind::theorem2:
      if (p.partition) {
        j["d"] = p.partition->d();
        j["d_prime"] = p.partition->d_prime();
        j["parts"] = p.partition->parts();
        j["r"] = p.partition->r();
        j["offsets"] = p.partition->offsets();
      }
      break;
    case ConstructionKind::composition:
      j["column_offset"] = p.column_offset;
      if (p.inputs.size() == 2) {
        j["left"] = provenance_to_json(p.inputs[0]);
        j["right"] = provenance_to_json(p.inputs[1]);
      }
      break;
    case ConstructionKind::fixture:
      j["name"] = p.fixture;
      break;
  }
  return j;
}

namespace detail {

template <class T>
T get_field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw MalformedDocument(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw MalformedDocument(std::string("bad field '") + key + "': " + e.what());
  }
}

}  // namespace detail

inline Provenance provenance_from_json(const Json& j) {
  Provenance p;
  const auto kind = detail::get_field<std::string>(j, "kind");
  try {
    if (kind == "theorem1") {
      p.kind = ConstructionKind::theorem1;
      if (j.contains("holes")) {
        const auto d = detail::get_field<std::size_t>(j, "d");
        const auto dp = detail::get_field<std::size_t>(j, "d_prime");
        std::vector<Hole> holes;
        for (const auto& h : detail::get_field<std::vector<std::vector<std::size_t>>>(j, "holes")) {
          if (h.size() != 2) throw MalformedDocument("hole entries must be [row, col]");
          holes.push_back({h[0], h[1]});
        }
        p.holes = HolePattern(d, dp, std::move(holes));
      }
      if (j.contains("b")) {
        CanonicalHoleForm f;
        f.row_order = detail::get_field<std::vector<std::size_t>>(j, "row_order");
        f.col_order = detail::get_field<std::vector<std::size_t>>(j, "col_order");
        f.b = detail::get_field<std::vector<std::size_t>>(j, "b");
        if (f.b.empty()) throw MalformedDocument("empty staircase");
        f.n_columns = f.b.back() + 1;
        if (!p.holes) throw MalformedDocument("theorem1 record: staircase without holes");
        check_canonical_form(*p.holes, f);
        p.canonical = std::move(f);
      }
    } else if (kind == "theorem2") {
      p.kind = ConstructionKind::theorem2;
      if (j.contains("parts")) {
        PartitionSpec spec(detail::get_field<std::size_t>(j, "d"), detail::get_field<std::size_t>(j, "d_prime"),
                           detail::get_field<std::vector<std::size_t>>(j, "parts"));
        if (j.contains("r") && detail::get_field<std::size_t>(j, "r") != spec.r()) {
          throw MalformedDocument("theorem2 record: r disagrees with parts");
        }
        p.partition = std::move(spec);
      }
    } else if (kind == "composition") {
      p.kind = ConstructionKind::composition;
      p.column_offset = detail::get_field<std::size_t>(j, "column_offset");
      if (j.contains("left") || j.contains("right")) {
        p.inputs.push_back(provenance_from_json(j.at("left")));
        p.inputs.push_back(provenance_from_json(j.at("right")));
      }
    } else if (kind == "fixture") {
      p.kind = ConstructionKind::fixture;
      p.fixture = detail::get_field<std::string>(j, "name");
    } else {
      throw MalformedDocument("unknown construction kind '" + kind + "'");
    }
  } catch (const InvalidInput& e) {
    throw MalformedDocument(std::string("invalid construction record: ") + e.what());
  } catch (const nlohmann::json::exception& e) {
    throw MalformedDocument(std::string("invalid construction record: ") + e.what());
  }
  return p;
}

inline Json state_to_json(const PureState& s, const std::vector<int>& label) {
  Json coeffs = Json::array();
  for (const auto& z : s.coeffs()) coeffs.push_back({z.real(), z.imag()});
  Json j;
  j["label"] = label;
  j["coeffs"] = std::move(coeffs);
  return j;
}

inline std::string save_basis(const BasisSet& basis) {
  std::ostringstream os;
  os << "{\n";
  os << "  \"format_version\": " << Json(kFormatVersion).dump() << ",\n";
  os << "  \"d\": " << basis.d() << ",\n";
  os << "  \"d_prime\": " << basis.d_prime() << ",\n";
  os << "  \"construction\": " << provenance_to_json(basis.provenance()).dump() << ",\n";
  if (basis.empty()) {
    os << "  \"states\": []\n";
  } else {
    os << "  \"states\": [\n";
    for (std::size_t i = 0; i < basis.size(); ++i) {
      os << "    " << state_to_json(basis[i], basis.labels()[i]).dump() << (i + 1 < basis.size() ? ",\n" : "\n");
    }
    os << "  ]\n";
  }
  os << "}\n";
  return os.str();
}

/// States are loaded without a norm check so that damaged documents reach the
/// verifier and fail there with a verdict.
inline BasisSet load_basis(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::exception& e) {
    throw MalformedDocument(std::string("not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw MalformedDocument("document must be a JSON object");
  if (detail::get_field<std::string>(doc, "format_version") != kFormatVersion) {
    throw MalformedDocument("unsupported format_version");
  }
  const auto d = detail::get_field<std::size_t>(doc, "d");
  const auto dp = detail::get_field<std::size_t>(doc, "d_prime");
  if (d == 0 || dp == 0 || d > dp) throw MalformedDocument("document requires 0 < d <= d_prime");
  if (!doc.contains("construction")) throw MalformedDocument("missing field 'construction'");
  auto prov = provenance_from_json(doc.at("construction"));
  if (!doc.contains("states") || !doc.at("states").is_array()) throw MalformedDocument("'states' must be an array");

  try {
    BasisSet basis(d, dp, std::move(prov));
    for (const auto& st : doc.at("states")) {
      const auto label = detail::get_field<std::vector<int>>(st, "label");
      const auto& coeffs = st.contains("coeffs") ? st.at("coeffs") : throw MalformedDocument("missing 'coeffs'");
      if (!coeffs.is_array() || coeffs.size() != d * dp) {
        throw MalformedDocument("each state needs d*d_prime = " + std::to_string(d * dp) + " coefficients");
      }
      std::vector<Complex> c;
      c.reserve(coeffs.size());
      for (const auto& z : coeffs) {
        if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number()) {
          throw MalformedDocument("coefficients must be [re, im] number pairs");
        }
        c.emplace_back(z[0].get<double>(), z[1].get<double>());
      }
      basis.add(PureState::unnormalized(d, dp, std::move(c)), label);
    }
    return basis;
  } catch (const InvalidInput& e) {
    throw MalformedDocument(e.what());
  }
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  f << text;
  if (!f) throw std::runtime_error("write to '" + path + "' failed");
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw MalformedDocument("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

inline BasisSet read_basis_file(const std::string& path) { return load_basis(read_text_file(path)); }
inline void write_basis_file(const std::string& path, const BasisSet& basis) {
  write_text_file(path, save_basis(basis));
}

inline Json report_to_json(const VerificationReport& r) {
  Json j;
  j["d"] = r.d;
  j["d_prime"] = r.d_prime;
  j["member_count"] = r.member_count;
  j["orthonormality"] = {{"pass", r.orthonormality.passed}, {"max_gram_deviation", r.orthonormality.deviation}};
  j["max_entanglement"] = {{"pass", r.max_entanglement.passed},
                           {"worst_singular_value_deviation", r.max_entanglement.deviation}};
  j["complement_dim"] = r.complement_dim ? Json(*r.complement_dim) : Json(nullptr);
  if (r.complement_support_full) {
    j["complement_column_support"] = "full";
  } else {
    j["complement_column_support"] = r.complement_column_support;
  }
  j["complement_generic_rank"] = r.complement_generic_rank;
  j["structural_unextendible"] = r.structural_unextendible;
  j["numeric_oracle_max_sigma_min"] = r.numeric_oracle_max_sigma_min;
  j["oracle_restarts_run"] = r.oracle_restarts_run;
  j["verdict"] = to_string(r.verdict);
  if (!r.qualifier.empty()) j["qualifier"] = r.qualifier;
  j["config"] = {{"tol", r.config.tol},
                 {"oracle_tol", r.config.oracle_tol},
                 {"oracle_restarts", r.config.oracle_restarts},
                 {"oracle_iters", r.config.oracle_iters},
                 {"generic_trials", r.config.generic_trials},
                 {"seed", r.config.seed}};
  return j;
}

}  // namespace umeb::io
