#include "mext/json_io.hpp"

#include <string>
#include <vector>

namespace mext {

namespace {

std::vector<long long> int_list(const json& j, const char* what) {
  if (!j.is_array()) throw precondition_error(std::string(what) + ": expected an array");
  std::vector<long long> out;
  out.reserve(j.size());
  for (const auto& v : j) {
    if (!v.is_number_integer()) throw precondition_error(std::string(what) + ": expected integers");
    out.push_back(v.get<long long>());
  }
  return out;
}

std::vector<QZ> qz_list(const json& j, const char* what) {
  if (!j.is_array()) throw precondition_error(std::string(what) + ": expected an array");
  std::vector<QZ> out;
  out.reserve(j.size());
  for (const auto& v : j) out.push_back(qz_from_json(v));
  return out;
}

json qz_array(const std::vector<QZ>& vs) {
  json out = json::array();
  for (const QZ& v : vs) out.push_back(to_json(v));
  return out;
}

const json& field(const json& j, const char* key, const char* what) {
  if (!j.is_object() || !j.contains(key))
    throw precondition_error(std::string(what) + ": missing field '" + key + "'");
  return j.at(key);
}

}  // namespace

json to_json(const QZ& v) { return json(v.str()); }

QZ qz_from_json(const json& j) {
  if (!j.is_string()) throw precondition_error("rational: expected a string \"num/den\"");
  return QZ::parse(j.get<std::string>());
}

json to_json(const FinAbGroup& g) { return json{{"moduli", g.moduli}}; }

FinAbGroup group_from_json(const json& j) {
  return make_group(int_list(field(j, "moduli", "group"), "group moduli"));
}

json to_json(const GroupElt& e) { return json{{"coords", e.coords}}; }

GroupElt elt_from_json(const json& j, const FinAbGroup& parent) {
  return make_elt(parent, int_list(field(j, "coords", "element"), "element coords"));
}

json to_json(const GroupHom& h) {
  json rows = json::array();
  for (int i = 0; i < h.matrix.rows; ++i) {
    json row = json::array();
    for (int jj = 0; jj < h.matrix.cols; ++jj) row.push_back(h.matrix.at(i, jj));
    rows.push_back(std::move(row));
  }
  return json{{"source", h.source.moduli}, {"target", h.target.moduli}, {"matrix", rows}};
}

namespace {

IntMat matrix_from_json(const json& j, int rows, int cols, const char* what) {
  if (!j.is_array() || static_cast<int>(j.size()) != rows)
    throw precondition_error(std::string(what) + ": matrix row count mismatch");
  IntMat m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    std::vector<long long> row = int_list(j.at(i), what);
    if (static_cast<int>(row.size()) != cols)
      throw precondition_error(std::string(what) + ": matrix column count mismatch");
    for (int c = 0; c < cols; ++c) m.at(i, c) = row[c];
  }
  return m;
}

}  // namespace

GroupHom hom_from_json(const json& j) {
  FinAbGroup src = make_group(int_list(field(j, "source", "hom"), "hom source"));
  FinAbGroup tgt = make_group(int_list(field(j, "target", "hom"), "hom target"));
  IntMat m = matrix_from_json(field(j, "matrix", "hom"), tgt.rank(), src.rank(), "hom");
  return make_hom(src, tgt, std::move(m));
}

json to_json(const QuadForm& q) {
  return json{{"group", q.group.moduli}, {"diag", qz_array(q.diag)}, {"cross", qz_array(q.cross)}};
}

QuadForm form_from_json(const json& j) {
  FinAbGroup g = make_group(int_list(field(j, "group", "form"), "form group"));
  return make_quad_form(g, qz_list(field(j, "diag", "form"), "form diag"),
                        qz_list(field(j, "cross", "form"), "form cross"));
}

json to_json(const MetricGroup& m) { return to_json(m.form); }

MetricGroup metric_from_json(const json& j) { return make_metric_group(form_from_json(j)); }

json to_json(const BaseCategory& b) {
  return json{{"A", b.a.moduli}, {"t", b.t.coords}};
}

BaseCategory base_from_json(const json& j) {
  FinAbGroup a = make_group(int_list(field(j, "A", "base"), "base group"));
  GroupElt t = make_elt(a, int_list(field(j, "t", "base"), "base t"));
  return make_base(a, t);
}

json to_json(const MinExt& m) {
  json iota = json::array();
  for (int i = 0; i < m.iota.matrix.rows; ++i) {
    json row = json::array();
    for (int jj = 0; jj < m.iota.matrix.cols; ++jj) row.push_back(m.iota.matrix.at(i, jj));
    iota.push_back(std::move(row));
  }
  return json{{"base", to_json(m.base)}, {"cat", to_json(m.cat)}, {"iota", iota}};
}

MinExt min_ext_from_json(const json& j) {
  BaseCategory base = base_from_json(field(j, "base", "extension"));
  MetricGroup cat = metric_from_json(field(j, "cat", "extension"));
  IntMat iota = matrix_from_json(field(j, "iota", "extension"), cat.group.rank(),
                                 base.a.rank(), "extension iota");
  return make_min_ext(base, cat, make_hom(dual_group(base.a), cat.group, std::move(iota)));
}

json to_json(const FactorReport& r) {
  return json{{"triv", r.triv.moduli},
              {"pt_over_triv", r.pt_over_triv.moduli},
              {"int_over_pt", r.int_over_pt.moduli},
              {"top", r.top.moduli},
              {"order", r.total_order},
              {"split", r.split}};
}

FactorReport factor_report_from_json(const json& j) {
  FactorReport r;
  r.triv = make_group(int_list(field(j, "triv", "factors"), "factors"));
  r.pt_over_triv = make_group(int_list(field(j, "pt_over_triv", "factors"), "factors"));
  r.int_over_pt = make_group(int_list(field(j, "int_over_pt", "factors"), "factors"));
  r.top = make_group(int_list(field(j, "top", "factors"), "factors"));
  r.total_order = field(j, "order", "factors").get<long long>();
  r.split = field(j, "split", "factors").get<bool>();
  return r;
}

json to_json(const Cocycle3& w) {
  return json{{"group", w.group.moduli},
              {"typeI", w.type1},
              {"typeII", w.type2},
              {"typeIII", w.type3}};
}

Cocycle3 cocycle_from_json(const json& j) {
  FinAbGroup g = make_group(int_list(field(j, "group", "cocycle"), "cocycle group"));
  Cocycle3 w = zero_cocycle(g);
  std::vector<long long> t1 = int_list(field(j, "typeI", "cocycle"), "cocycle typeI");
  std::vector<long long> t2 = int_list(field(j, "typeII", "cocycle"), "cocycle typeII");
  std::vector<long long> t3 = int_list(field(j, "typeIII", "cocycle"), "cocycle typeIII");
  if (t1.size() != w.type1.size() || t2.size() != w.type2.size() || t3.size() != w.type3.size())
    throw precondition_error("cocycle: coefficient count does not match the group rank");
  int r = g.rank();
  for (int i = 0; i < r; ++i) {
    Cocycle3 part = standard_cocycle(g, 1, {i}, t1[i]);
    w.type1[i] = part.type1[i];
  }
  int idx = 0;
  for (int i = 0; i < r; ++i)
    for (int jj = i + 1; jj < r; ++jj, ++idx) {
      Cocycle3 part = standard_cocycle(g, 2, {i, jj}, t2[idx]);
      w.type2[idx] = part.type2[idx];
    }
  idx = 0;
  for (int i = 0; i < r; ++i)
    for (int jj = i + 1; jj < r; ++jj)
      for (int k = jj + 1; k < r; ++k, ++idx) {
        Cocycle3 part = standard_cocycle(g, 3, {i, jj, k}, t3[idx]);
        w.type3[idx] = part.type3[idx];
      }
  return w;
}

std::string encode(const json& j) { return j.dump(); }

}  // namespace mext
