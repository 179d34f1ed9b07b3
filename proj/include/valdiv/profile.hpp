#pragma once

// Symbolic field profiles for the cohomological-dimension calculator: a base
// field (exact, Q_p marker, declared, algebraically closed, or the completion
// of Q_p(t)) followed by a tower of Laurent layers. Each Laurent layer raises
// the q-rank of the value group and cd_q by one.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "valdiv/field.hpp"

namespace valdiv {

struct CdValue {
  enum class Kind { Finite, Infinite, AtMost, Undefined };
  Kind kind = Kind::Undefined;
  std::int64_t value = 0;
  std::string note;

  static CdValue finite(std::int64_t v) { return {Kind::Finite, v, {}}; }
  static CdValue infinite(std::string note = {}) { return {Kind::Infinite, 0, std::move(note)}; }
  static CdValue at_most(std::int64_t v, std::string note = {}) { return {Kind::AtMost, v, std::move(note)}; }
  static CdValue undefined(std::string note) { return {Kind::Undefined, 0, std::move(note)}; }

  bool is_finite() const noexcept { return kind == Kind::Finite; }
  /// "3", "inf", "<=3", "undefined".
  std::string to_string() const;
  friend bool operator==(const CdValue& a, const CdValue& b) { return a.kind == b.kind && a.value == b.value; }
};

struct BaseField {
  enum class Kind { Exact, PAdic, Declared, Closed, Completion };
  Kind kind = Kind::Exact;
  const Field* field = nullptr;
  /// The prime of Q_p and of the completion; the characteristic of declared
  /// and closed bases.
  std::int64_t p = 0;
  /// Declared cd_q values; key 0 applies to every prime not listed, and a
  /// negative value stands for infinity.
  std::map<std::int64_t, std::int64_t> declared_cd;
  /// Completion only: an asserted exact cd_q.
  std::optional<std::int64_t> asserted_cd;

  friend bool operator==(const BaseField& a, const BaseField& b);
};

/// cd_q of a base field from the known table: finite fields 1, Q_p (q != p) 2,
/// algebraically closed 0, declared bases as given.
CdValue known_cd(const BaseField& base, std::int64_t q);

struct FieldProfile {
  BaseField base;
  /// Laurent variables, innermost first.
  std::vector<std::string> variables;

  std::size_t height() const noexcept { return variables.size(); }
  std::int64_t residue_characteristic() const;
  /// q-rank of the value group: one per Laurent layer, plus one for the
  /// discrete valuation of the completion base.
  std::int64_t r_q(std::int64_t q) const;
  /// cd_q of the residue field.
  CdValue residue_cd(std::int64_t q) const;
  /// cd_q(residue field) + r_q; undefined when q is the residue
  /// characteristic or the residue cd_q is infinite or unknown.
  CdValue cd(std::int64_t q) const;

  /// Canonical description, e.g. "decl(cd2=1)((x))((y))".
  std::string to_string() const;
  friend bool operator==(const FieldProfile& a, const FieldProfile& b) {
    return a.base == b.base && a.variables == b.variables;
  }
};

nlohmann::json profile_json(const FieldProfile& profile, std::int64_t q);

}  // namespace valdiv
