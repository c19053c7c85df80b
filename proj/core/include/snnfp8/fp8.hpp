#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace snnfp8 {

enum class Fp8Class : std::uint8_t { Zero, Subnormal, Normal, NaN };

std::string_view to_string(Fp8Class c);

/// One FP8 E4M3 ("fn" variant) byte: [S | E3 E2 E1 E0 | M2 M1 M0], bias 7,
/// no infinities, NaN iff E = 15 and M = 7, max finite magnitude 448.
class Fp8Code {
 public:
  constexpr Fp8Code() = default;
  constexpr explicit Fp8Code(std::uint8_t bits) : bits_(bits) {}

  static constexpr Fp8Code from_fields(unsigned sign, unsigned exponent, unsigned mantissa) {
    return Fp8Code(static_cast<std::uint8_t>(((sign & 1u) << 7) | ((exponent & 15u) << 3) |
                                             (mantissa & 7u)));
  }

  constexpr std::uint8_t bits() const { return bits_; }
  constexpr unsigned sign() const { return bits_ >> 7; }
  constexpr unsigned exponent() const { return (bits_ >> 3) & 15u; }
  constexpr unsigned mantissa() const { return bits_ & 7u; }
  constexpr bool is_nan() const { return (bits_ & 0x7F) == 0x7F; }
  constexpr Fp8Code negated() const { return Fp8Code(bits_ ^ 0x80); }

  friend constexpr bool operator==(Fp8Code, Fp8Code) = default;

 private:
  std::uint8_t bits_ = 0;
};

inline constexpr Fp8Code kCanonicalNaN{0x7F};
inline constexpr Fp8Code kMaxFinite{0x7E};  // +448
inline constexpr unsigned kExponentBias = 7;

enum class OverflowPolicy : std::uint8_t { Saturate, NaN };

Fp8Class classify(Fp8Code c);

/// Alignment exponent: 1 for a zero exponent field, else the field itself.
unsigned effective_exponent(Fp8Code c);

/// Exact dyadic rational (-1)^negative * significand * 2^scale. Canonical
/// form has an odd significand, or significand 0 and scale 0 for zero.
struct ExactReal {
  bool negative = false;
  std::uint64_t significand = 0;
  int scale = 0;

  static ExactReal make(bool negative, std::uint64_t significand, int scale);
  bool is_zero() const { return significand == 0; }
  double to_double() const;
  friend bool operator==(const ExactReal&, const ExactReal&) = default;
};

ExactReal exact_mul(const ExactReal& a, const ExactReal& b);
/// Exact sum; an exactly cancelling nonzero pair yields +0, and
/// (-0) + (-0) = -0.
ExactReal exact_add(const ExactReal& a, const ExactReal& b);

/// Bits consulted by round-to-nearest-even: increment iff R and (S or L).
struct RoundFlags {
  bool lsb = false;
  bool round = false;
  bool sticky = false;

  constexpr bool trigger() const { return round && (sticky || lsb); }
};

/// Exact value of a finite code; throws std::domain_error for NaN.
ExactReal decode(Fp8Code c);

/// Round-to-nearest-even into E4M3. Magnitudes that round beyond 448 saturate
/// to +-448 or become canonical NaN, per policy. Zero keeps its sign.
Fp8Code encode_rne(const ExactReal& x, OverflowPolicy policy = OverflowPolicy::Saturate);

/// Golden reference operations. NaN operands propagate as canonical NaN.
Fp8Code oracle_mul(Fp8Code a, Fp8Code b, OverflowPolicy policy = OverflowPolicy::Saturate);
Fp8Code oracle_add(Fp8Code a, Fp8Code b, OverflowPolicy policy = OverflowPolicy::Saturate);

/// Value as a double (quiet NaN for NaN codes); exact for every code.
double to_double(Fp8Code c);

/// All 254 finite codes in ascending byte order.
const std::vector<Fp8Code>& finite_codes();

/// Position on the ordered number line, with +0 and -0 both at 0.
int ordinal(Fp8Code c);
/// Number of representable steps between two finite codes.
int ulp_distance(Fp8Code a, Fp8Code b);

/// Bit lines of the spike bus, MSB first: [S, E3, E2, E1, E0, M2, M1, M0].
std::array<std::uint8_t, 8> to_lines(Fp8Code c);
Fp8Code from_lines(std::span<const std::uint8_t> lines);

/// CSV dump of all 256 codes: code,hex,sign,exponent,mantissa,class,value.
std::string code_table_csv();

/// "0x3f" style rendering; parsing accepts hex with a 0x prefix or decimal.
std::string to_hex(Fp8Code c);
Fp8Code parse_code(std::string_view text);

}  // namespace snnfp8
