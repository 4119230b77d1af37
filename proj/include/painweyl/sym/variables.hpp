#pragma once

#include <array>
#include <bitset>
#include <cstdint>
#include <optional>
#include <string_view>

namespace painweyl::sym {

// The variable registry is a fixed, immutable table. Indices never change,
// so exponent vectors can be compared across every expression in a run.
inline constexpr std::size_t kNumVars = 20;

struct Var {
  std::uint8_t index = 0;
  friend constexpr bool operator==(Var, Var) = default;
  friend constexpr auto operator<=>(Var, Var) = default;
};

class VariableRegistry {
 public:
  static constexpr std::array<std::string_view, kNumVars> kNames = {
      "q1", "p1", "q2", "p2", "t",  "eta", "a0", "a1", "a2",  "a3",
      "a4", "a5", "a6", "x",  "y",  "z",   "w",  "qd", "qdd", "a"};

  static constexpr std::size_t size() { return kNumVars; }
  static constexpr std::string_view name(Var v) { return kNames[v.index]; }

  static constexpr std::optional<Var> lookup(std::string_view name) {
    for (std::size_t i = 0; i < kNumVars; ++i) {
      if (kNames[i] == name) return Var{static_cast<std::uint8_t>(i)};
    }
    return std::nullopt;
  }
};

namespace vars {
inline constexpr Var q1{0}, p1{1}, q2{2}, p2{3}, t{4}, eta{5};
inline constexpr Var a0{6}, a1{7}, a2{8}, a3{9}, a4{10}, a5{11}, a6{12};
inline constexpr Var x{13}, y{14}, z{15}, w{16};
inline constexpr Var qd{17}, qdd{18};
/// Free parameter along a singular locus.
inline constexpr Var a{19};

// P_VI models reuse the first symplectic pair.
inline constexpr Var q = q1;
inline constexpr Var p = p1;

inline constexpr Var alpha(int i) { return Var{static_cast<std::uint8_t>(6 + i)}; }
}  // namespace vars

/// Set of variables, used to say "polynomial in these".
class VarSet {
 public:
  constexpr VarSet() = default;
  VarSet(std::initializer_list<Var> vs) {
    for (Var v : vs) bits_.set(v.index);
  }
  bool contains(Var v) const { return bits_.test(v.index); }
  void insert(Var v) { bits_.set(v.index); }
  bool empty() const { return bits_.none(); }
  std::size_t size() const { return bits_.count(); }
  VarSet complement() const {
    VarSet r;
    r.bits_ = ~bits_;
    return r;
  }
  friend bool operator==(const VarSet&, const VarSet&) = default;

 private:
  std::bitset<kNumVars> bits_;
};

inline const VarSet& phase4() {
  static const VarSet s{vars::q1, vars::p1, vars::q2, vars::p2};
  return s;
}
inline const VarSet& chart4() {
  static const VarSet s{vars::x, vars::y, vars::z, vars::w};
  return s;
}

}  // namespace painweyl::sym
