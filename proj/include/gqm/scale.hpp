// Normalization of the Kaehler pair (g, Omega) on projective space.
//
// statistical: the direct projection of Re/Im of the Hermitian inner product.
//              Geodesic distance arccos|<a|b>|, spanned spheres of area pi.
// observable:  twice the statistical pair. Here {f,g} = <-i[F,G]> and
//              (f,f) = 2 (Delta F)^2 hold without extra factors.

#pragma once

#include <string_view>

namespace gqm {

enum class ScaleTag { statistical, observable };

class KahlerScale {
 public:
  static constexpr KahlerScale statistical() { return KahlerScale(ScaleTag::statistical); }
  static constexpr KahlerScale observable() { return KahlerScale(ScaleTag::observable); }

  constexpr ScaleTag tag() const noexcept { return tag_; }
  constexpr double factor() const noexcept { return tag_ == ScaleTag::statistical ? 1.0 : 2.0; }
  constexpr std::string_view name() const noexcept {
    return tag_ == ScaleTag::statistical ? "statistical" : "observable";
  }
  constexpr bool operator==(const KahlerScale&) const = default;

 private:
  constexpr explicit KahlerScale(ScaleTag t) : tag_(t) {}
  ScaleTag tag_;
};

}  // namespace gqm
