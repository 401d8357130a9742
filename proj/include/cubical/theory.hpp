#pragma once

#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace cubical {

// Structural symbols a cube category may admit beyond faces and projections.
enum class Symbol : unsigned {
  meet  = 1u << 0,  // positive connections
  join  = 1u << 1,  // negative connections
  sigma = 1u << 2,  // transpositions (symmetries)
  rho   = 1u << 3,  // reversals
  delta = 1u << 4,  // diagonals
};

inline constexpr unsigned all_symbols_mask = 0x1f;

// A cube-category signature: the subset of {meet, join, sigma, rho, delta}
// whose generators are admitted alongside faces and projections.
//
// Reversals turn positive connections into negative ones and vice versa, so
// a signature containing rho and one kind of connection is normalized to
// contain both kinds.
class Theory {
 public:
  constexpr Theory() = default;
  explicit constexpr Theory(unsigned mask) : mask_(normalize(mask & all_symbols_mask)) {}
  Theory(std::initializer_list<Symbol> syms) {
    unsigned m = 0;
    for (Symbol s : syms) m |= static_cast<unsigned>(s);
    mask_ = normalize(m);
  }

  static constexpr Theory none() { return Theory{}; }
  // Full subcategory of Poset on the powers of {0 <= 1}.
  static constexpr Theory poset() {
    return Theory(static_cast<unsigned>(Symbol::meet) | static_cast<unsigned>(Symbol::join) |
                  static_cast<unsigned>(Symbol::sigma) | static_cast<unsigned>(Symbol::delta));
  }
  // Full subcategory of Set on the powers of {0, 1}.
  static constexpr Theory full() { return Theory(all_symbols_mask); }

  constexpr bool has(Symbol s) const { return (mask_ & static_cast<unsigned>(s)) != 0; }
  constexpr bool subset_of(const Theory& o) const { return (mask_ & ~o.mask_) == 0; }
  constexpr bool connections_only() const {
    return (mask_ & ~(static_cast<unsigned>(Symbol::meet) | static_cast<unsigned>(Symbol::join))) == 0;
  }
  constexpr unsigned mask() const { return mask_; }

  friend constexpr bool operator==(const Theory& a, const Theory& b) { return a.mask_ == b.mask_; }
  friend constexpr bool operator!=(const Theory& a, const Theory& b) { return a.mask_ != b.mask_; }
  friend constexpr bool operator<(const Theory& a, const Theory& b) { return a.mask_ < b.mask_; }

  // Canonical symbol names in alphabetical order, as used in serialization.
  std::vector<std::string> symbol_names() const {
    std::vector<std::string> out;
    if (has(Symbol::delta)) out.push_back("delta");
    if (has(Symbol::join)) out.push_back("join");
    if (has(Symbol::meet)) out.push_back("meet");
    if (has(Symbol::rho)) out.push_back("rho");
    if (has(Symbol::sigma)) out.push_back("sigma");
    return out;
  }

  static Theory from_symbol_names(const std::vector<std::string>& names) {
    unsigned m = 0;
    for (const auto& s : names) {
      if (s == "meet") m |= static_cast<unsigned>(Symbol::meet);
      else if (s == "join") m |= static_cast<unsigned>(Symbol::join);
      else if (s == "sigma") m |= static_cast<unsigned>(Symbol::sigma);
      else if (s == "rho") m |= static_cast<unsigned>(Symbol::rho);
      else if (s == "delta") m |= static_cast<unsigned>(Symbol::delta);
      else throw std::invalid_argument("unknown theory symbol: " + s);
    }
    return Theory(m);
  }

  std::string name() const {
    if (mask_ == 0) return "none";
    if (*this == poset()) return "poset";
    if (*this == full()) return "full";
    std::string out;
    for (const auto& s : symbol_names()) {
      if (!out.empty()) out += '+';
      out += s;
    }
    return out;
  }

 private:
  static constexpr unsigned normalize(unsigned m) {
    const unsigned rho = static_cast<unsigned>(Symbol::rho);
    const unsigned conns = static_cast<unsigned>(Symbol::meet) | static_cast<unsigned>(Symbol::join);
    if ((m & rho) && (m & conns)) m |= conns;
    return m;
  }

  unsigned mask_ = 0;
};

}  // namespace cubical
