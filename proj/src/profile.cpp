#include "valdiv/profile.hpp"

#include "valdiv/errors.hpp"
#include "valdiv/tower.hpp"

namespace valdiv {

std::string CdValue::to_string() const {
  switch (kind) {
    case Kind::Finite:
      return std::to_string(value);
    case Kind::Infinite:
      return "inf";
    case Kind::AtMost:
      return "<=" + std::to_string(value);
    case Kind::Undefined:
      break;
  }
  return "undefined";
}

bool operator==(const BaseField& a, const BaseField& b) {
  return a.kind == b.kind && a.field == b.field && a.p == b.p && a.declared_cd == b.declared_cd &&
         a.asserted_cd == b.asserted_cd;
}

CdValue known_cd(const BaseField& base, std::int64_t q) {
  switch (base.kind) {
    case BaseField::Kind::Exact: {
      const Field& f = *base.field;
      if (f.characteristic() == q) return CdValue::undefined("q equals the characteristic");
      if (f.is_finite()) return CdValue::finite(1);
      if (f.kind() == Field::Kind::Rational) {
        if (q == 2) return CdValue::infinite("Q has a real place");
        return CdValue::finite(2);
      }
      if (q != 2) return CdValue::finite(2);
      return CdValue::undefined("cd_2 of a number field depends on its real places");
    }
    case BaseField::Kind::PAdic:
      if (q == base.p) return CdValue::undefined("the table covers Q_p only for q != p");
      return CdValue::finite(2);
    case BaseField::Kind::Closed:
      if (q == base.p) return CdValue::undefined("q equals the characteristic");
      return CdValue::finite(0);
    case BaseField::Kind::Declared: {
      if (q == base.p) return CdValue::undefined("q equals the characteristic");
      auto it = base.declared_cd.find(q);
      if (it == base.declared_cd.end()) it = base.declared_cd.find(0);
      if (it == base.declared_cd.end()) return CdValue::undefined("cd_" + std::to_string(q) + " not declared");
      if (it->second < 0) return CdValue::infinite("declared infinite");
      return CdValue::finite(it->second);
    }
    case BaseField::Kind::Completion:
      if (q == base.p) return CdValue::undefined("q equals p");
      if (base.asserted_cd) return CdValue::finite(*base.asserted_cd);
      return CdValue::at_most(3, "completion of Q_p(t): cd_q(Q_p(t)) = 3 bounds the completion");
  }
  return CdValue::undefined("unknown base");
}

std::int64_t FieldProfile::residue_characteristic() const {
  switch (base.kind) {
    case BaseField::Kind::Exact:
      return base.field->characteristic();
    case BaseField::Kind::PAdic:
      return 0;
    case BaseField::Kind::Completion:
      return base.p;
    case BaseField::Kind::Declared:
    case BaseField::Kind::Closed:
      return base.p;
  }
  return 0;
}

std::int64_t FieldProfile::r_q(std::int64_t) const {
  const auto m = static_cast<std::int64_t>(height());
  return base.kind == BaseField::Kind::Completion ? m + 1 : m;
}

CdValue FieldProfile::residue_cd(std::int64_t q) const {
  if (base.kind == BaseField::Kind::Completion) {
    // Residue field of the rank-one discrete valuation; only its finiteness is used.
    if (q == base.p) return CdValue::undefined("q equals p");
    return CdValue::at_most(2, "residue field of the completion");
  }
  return known_cd(base, q);
}

CdValue FieldProfile::cd(std::int64_t q) const {
  const std::int64_t pbar = residue_characteristic();
  if (pbar != 0 && q == pbar) return CdValue::undefined("q equals the residue characteristic");
  const CdValue b = known_cd(base, q);
  const auto m = static_cast<std::int64_t>(height());
  switch (b.kind) {
    case CdValue::Kind::Finite:
      return CdValue::finite(b.value + m);
    case CdValue::Kind::AtMost:
      return CdValue::at_most(b.value + m, b.note);
    case CdValue::Kind::Infinite:
      return CdValue::undefined("residue cd_q is infinite");
    case CdValue::Kind::Undefined:
      break;
  }
  return b;
}

namespace {

std::string cd_entry(std::int64_t v) { return v < 0 ? "inf" : std::to_string(v); }

std::string base_string(const BaseField& b) {
  switch (b.kind) {
    case BaseField::Kind::Exact:
      return b.field->to_string();
    case BaseField::Kind::PAdic:
      return "Qp(p=" + std::to_string(b.p) + ")";
    case BaseField::Kind::Closed:
      return "closed(char=" + std::to_string(b.p) + ")";
    case BaseField::Kind::Completion: {
      std::string s = "completion(p=" + std::to_string(b.p);
      if (b.asserted_cd) s += ", cd=" + std::to_string(*b.asserted_cd);
      return s + ")";
    }
    case BaseField::Kind::Declared: {
      std::string s = "decl(";
      bool first = true;
      for (const auto& [q, v] : b.declared_cd) {
        if (q == 0) continue;
        s += (first ? "" : ", ") + ("cd" + std::to_string(q)) + "=" + cd_entry(v);
        first = false;
      }
      if (auto it = b.declared_cd.find(0); it != b.declared_cd.end()) {
        s += (first ? "" : ", ") + std::string("cdq=") + cd_entry(it->second);
        first = false;
      }
      if (b.p != 0 || first) s += (first ? "" : ", ") + std::string("char=") + std::to_string(b.p);
      return s + ")";
    }
  }
  return "?";
}

}  // namespace

std::string FieldProfile::to_string() const { return base_string(base) + tower_suffix(variables); }

nlohmann::json profile_json(const FieldProfile& profile, std::int64_t q) {
  nlohmann::json j;
  j["description"] = profile.to_string();
  j["q"] = q;
  j["tower_height"] = profile.height();
  j["residue_characteristic"] = profile.residue_characteristic();
  j["r_q"] = profile.r_q(q);
  const CdValue r = profile.residue_cd(q), c = profile.cd(q);
  j["residue_cd_q"] = r.to_string();
  j["cd_q"] = c.to_string();
  if (!c.note.empty()) j["cd_note"] = c.note;
  return j;
}

}  // namespace valdiv
