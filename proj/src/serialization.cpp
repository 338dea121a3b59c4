#include "iwasawa/serialization.hpp"

#include "iwasawa/errors.hpp"

namespace iwasawa {

namespace {

template <typename Mat>
Json matrix_json(const Mat& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <typename Mat>
Mat matrix_from(const Json& j) {
  Mat m;
  if (!j.is_array() || static_cast<int>(j.size()) != m.rows())
    throw ValidationError("matrix row count mismatch");
  for (int i = 0; i < m.rows(); ++i) {
    const Json& row = j.at(i);
    if (!row.is_array() || static_cast<int>(row.size()) != m.cols())
      throw ValidationError("matrix column count mismatch");
    for (int k = 0; k < m.cols(); ++k) m(i, k) = row.at(k).get<double>();
  }
  return m;
}

}  // namespace

Json json_of(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from(const Json& j) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (!j.is_array() || j.size() != 2)
    throw ValidationError("complex values are [re, im] pairs");
  return Complex(j.at(0).get<double>(), j.at(1).get<double>());
}

Json json_of(const KForm& form) {
  Json terms = Json::array();
  for (const auto& [idx, coeff] : form.terms(0.0)) {
    Json term;
    term["idx"] = idx.indices();
    term["re"] = coeff.real();
    term["im"] = coeff.imag();
    terms.push_back(std::move(term));
  }
  Json out;
  out["degree"] = form.degree();
  out["terms"] = std::move(terms);
  return out;
}

KForm kform_from(const Json& j) {
  KForm form(j.at("degree").get<int>());
  for (const Json& term : j.at("terms")) {
    std::uint8_t mask = 0;
    for (const Json& idx : term.at("idx")) {
      const int i = idx.get<int>();
      if (i < 1 || i > kDim) throw ValidationError("form index outside 1..6");
      mask |= static_cast<std::uint8_t>(1u << (i - 1));
    }
    form.set_coeff(MultiIndex(mask),
                   Complex(term.at("re").get<double>(), term.at("im").get<double>()));
  }
  return form;
}

Json json_of(const ACS& acs) {
  Json out;
  out["J"] = matrix_json(acs.J);
  return out;
}

ACS acs_from(const Json& j) { return ACS(matrix_from<Mat6d>(j.at("J"))); }

Json json_of(const EchelonPlus& coords) {
  Json out;
  out["a"] = json_of(coords.a);
  out["b"] = json_of(coords.b);
  out["c"] = json_of(coords.c);
  out["d"] = json_of(coords.d);
  out["x"] = json_of(coords.x);
  out["y"] = json_of(coords.y);
  out["u"] = json_of(coords.u());
  return out;
}

EchelonPlus echelon_plus_from(const Json& j) {
  return EchelonPlus{complex_from(j.at("a")), complex_from(j.at("b")),
                     complex_from(j.at("c")), complex_from(j.at("d")),
                     complex_from(j.at("x")), complex_from(j.at("y"))};
}

Json json_of(const EchelonMinus& coords) {
  Json out;
  out["a"] = json_of(coords.a);
  out["b"] = json_of(coords.b);
  out["c"] = json_of(coords.c);
  out["x"] = json_of(coords.x);
  out["y"] = json_of(coords.y);
  out["v"] = json_of(coords.v);
  out["d"] = json_of(coords.d());
  return out;
}

EchelonMinus echelon_minus_from(const Json& j) {
  return EchelonMinus{complex_from(j.at("a")), complex_from(j.at("b")),
                      complex_from(j.at("c")), complex_from(j.at("x")),
                      complex_from(j.at("y")), complex_from(j.at("v"))};
}

Json json_of(const SphereCoord& n) {
  Json out;
  out["A"] = n.A;
  out["B"] = n.B;
  out["C"] = n.C;
  return out;
}

SphereCoord sphere_from(const Json& j) {
  return SphereCoord{j.at("A").get<double>(), j.at("B").get<double>(),
                     j.at("C").get<double>()};
}

Json json_of(const PolarSplit& split) {
  Json out;
  out["S"] = matrix_json(split.S);
  out["P"] = matrix_json(split.P);
  return out;
}

Json json_of(const SpectrumClass& s) {
  Json out;
  out["gamma"] = s.gamma;
  out["delta"] = s.delta;
  out["lambda"] = json_of(s.lambda);
  out["mu"] = json_of(s.mu);
  out["region"] = region_name(s.region);
  out["orient_D"] = s.orient_D;
  out["orient_total"] = s.orient_total;
  return out;
}

Json json_of(const DolbeaultReport& r) {
  Json out;
  out["dims"] = r.dims;
  out["rank0"] = r.rank0;
  out["rank1"] = r.rank1;
  out["ker1"] = r.ker1;
  out["h1"] = r.h1;
  out["sv0"] = r.sv0;
  out["sv1"] = r.sv1;
  return out;
}

std::string region_name(Region region) {
  switch (region) {
    case Region::ConjugatePair: return "conjugate-pair";
    case Region::RealTriangle: return "real-triangle";
    case Region::NegativeDiagonal: return "negative-diagonal";
    case Region::Shaded: return "shaded";
    case Region::Boundary: return "boundary";
  }
  return "boundary";
}

std::string component_name(Component component) {
  switch (component) {
    case Component::Cplus: return "C+";
    case Component::Cminus: return "C-";
    case Component::MinusCplus: return "-C+";
    case Component::MinusCminus: return "-C-";
  }
  return "C+";
}

}  // namespace iwasawa
