#include "duality/pauli.hpp"

#include <bit>
#include <cstdio>
#include <sstream>

namespace duality {

namespace {

constexpr Complex kPhases[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

int words_for(int length) { return (length + 63) / 64; }

int popcount_and(const std::vector<std::uint64_t>& a,
                 const std::vector<std::uint64_t>& b) {
  int count = 0;
  for (std::size_t w = 0; w < a.size(); ++w)
    count += std::popcount(a[w] & b[w]);
  return count;
}

}  // namespace

char pauli_char(PauliOp op) {
  switch (op) {
    case PauliOp::I: return 'I';
    case PauliOp::X: return 'X';
    case PauliOp::Y: return 'Y';
    case PauliOp::Z: return 'Z';
  }
  return '?';
}

PauliOp pauli_from_char(char c) {
  switch (c) {
    case 'I': return PauliOp::I;
    case 'X': return PauliOp::X;
    case 'Y': return PauliOp::Y;
    case 'Z': return PauliOp::Z;
    default:
      throw std::invalid_argument(std::string("not a Pauli letter: ") + c);
  }
}

PauliString::PauliString(int length)
    : length_(length), phase_(0), x_(words_for(length), 0),
      z_(words_for(length), 0) {
  if (length <= 0) throw DimensionError("PauliString length must be positive");
}

PauliString PauliString::single(int length, int site, PauliOp op) {
  PauliString s(length);
  s.set_op(site, op);
  return s;
}

PauliString PauliString::parse(std::string_view letters) {
  PauliString s(static_cast<int>(letters.size()));
  for (int k = 0; k < s.length_; ++k)
    s.set_op(k, pauli_from_char(letters[static_cast<std::size_t>(k)]));
  return s;
}

PauliOp PauliString::op(int site) const {
  const bool x = x_bit(site), z = z_bit(site);
  if (x && z) return PauliOp::Y;
  if (x) return PauliOp::X;
  if (z) return PauliOp::Z;
  return PauliOp::I;
}

void PauliString::set_op(int site, PauliOp op) {
  const bool x = op == PauliOp::X || op == PauliOp::Y;
  const bool z = op == PauliOp::Z || op == PauliOp::Y;
  set_bits(site, x, z);
}

bool PauliString::x_bit(int site) const {
  return (x_[static_cast<std::size_t>(site) / 64] >> (site % 64)) & 1u;
}

bool PauliString::z_bit(int site) const {
  return (z_[static_cast<std::size_t>(site) / 64] >> (site % 64)) & 1u;
}

void PauliString::set_bits(int site, bool x, bool z) {
  if (site < 0 || site >= length_)
    throw DimensionError("PauliString site out of range");
  const std::size_t w = static_cast<std::size_t>(site) / 64;
  const std::uint64_t mask = std::uint64_t{1} << (site % 64);
  x_[w] = x ? (x_[w] | mask) : (x_[w] & ~mask);
  z_[w] = z ? (z_[w] | mask) : (z_[w] & ~mask);
}

Complex PauliString::phase() const { return kPhases[phase_]; }

void PauliString::multiply_phase(int exponent) {
  phase_ = ((phase_ + exponent) % 4 + 4) % 4;
}

bool PauliString::is_identity() const {
  for (std::size_t w = 0; w < x_.size(); ++w)
    if (x_[w] != 0 || z_[w] != 0) return false;
  return true;
}

int PauliString::weight() const {
  int count = 0;
  for (std::size_t w = 0; w < x_.size(); ++w)
    count += std::popcount(x_[w] | z_[w]);
  return count;
}

bool PauliString::commutes_with(const PauliString& other) const {
  if (length_ != other.length_)
    throw DimensionError("commutes_with: length mismatch");
  const int sym =
      popcount_and(x_, other.z_) + popcount_and(z_, other.x_);
  return (sym % 2) == 0;
}

PauliString PauliString::adjoint() const {
  PauliString out = *this;
  out.phase_ = (4 - phase_) % 4;
  return out;
}

std::string PauliString::letters() const {
  std::string out(static_cast<std::size_t>(length_), 'I');
  for (int k = 0; k < length_; ++k)
    out[static_cast<std::size_t>(k)] = pauli_char(op(k));
  return out;
}

bool PauliString::key_less(const PauliString& a, const PauliString& b) {
  if (a.length_ != b.length_) return a.length_ < b.length_;
  for (std::size_t w = a.z_.size(); w-- > 0;) {
    if (a.z_[w] != b.z_[w]) return a.z_[w] < b.z_[w];
  }
  for (std::size_t w = a.x_.size(); w-- > 0;) {
    if (a.x_[w] != b.x_[w]) return a.x_[w] < b.x_[w];
  }
  return false;
}

bool PauliString::same_letters(const PauliString& other) const {
  return length_ == other.length_ && x_ == other.x_ && z_ == other.z_;
}

// Product in the letters convention. Route through the XZ form
// (Y = i X Z): a letters string with phase i^t equals i^{t+|x&z|} times the
// corresponding product of X^x Z^z factors, and in XZ form multiplication
// only picks up (-1)^{|z1 & x2|} from commuting Z factors past X factors.
PauliString operator*(const PauliString& a, const PauliString& b) {
  if (a.length_ != b.length_)
    throw DimensionError("PauliString product: length mismatch");
  PauliString out(a.length_);
  const int ya = popcount_and(a.x_, a.z_);
  const int yb = popcount_and(b.x_, b.z_);
  const int swaps = popcount_and(a.z_, b.x_);
  for (std::size_t w = 0; w < out.x_.size(); ++w) {
    out.x_[w] = a.x_[w] ^ b.x_[w];
    out.z_[w] = a.z_[w] ^ b.z_[w];
  }
  const int yc = popcount_and(out.x_, out.z_);
  const int t = a.phase_ + b.phase_ + ya + yb + 2 * swaps - yc;
  out.phase_ = ((t % 4) + 4) % 4;
  return out;
}

bool operator==(const PauliString& a, const PauliString& b) {
  return a.length_ == b.length_ && a.phase_ == b.phase_ && a.x_ == b.x_ &&
         a.z_ == b.z_;
}

PauliSum::PauliSum(int length) : length_(length) {
  if (length <= 0) throw DimensionError("PauliSum length must be positive");
}

PauliSum PauliSum::identity(int length, Complex coeff) {
  PauliSum s(length);
  s.add(PauliString(length), coeff);
  return s;
}

void PauliSum::add(const PauliString& s, Complex coeff) {
  if (s.length() != length_) throw DimensionError("PauliSum add: length mismatch");
  const Complex effective = coeff * s.phase();
  PauliString key = s;
  key.phase_ = 0;
  auto [it, inserted] = terms_.try_emplace(key, effective);
  if (!inserted) it->second += effective;
  if (std::abs(it->second) <= kZeroEps) terms_.erase(it);
}

Complex PauliSum::coefficient(const PauliString& s) const {
  if (s.length() != length_)
    throw DimensionError("PauliSum coefficient: length mismatch");
  PauliString key = s;
  key.phase_ = 0;
  auto it = terms_.find(key);
  if (it == terms_.end()) return 0.0;
  // stored = c * i^t  =>  c = stored * i^{-t}
  return it->second * std::conj(s.phase());
}

PauliSum& PauliSum::operator+=(const PauliSum& other) {
  if (other.length_ != length_) throw DimensionError("PauliSum +=: length mismatch");
  for (const auto& [key, coeff] : other.terms_) add(key, coeff);
  return *this;
}

PauliSum& PauliSum::operator-=(const PauliSum& other) {
  if (other.length_ != length_) throw DimensionError("PauliSum -=: length mismatch");
  for (const auto& [key, coeff] : other.terms_) add(key, -coeff);
  return *this;
}

PauliSum& PauliSum::operator*=(Complex factor) {
  if (factor == Complex{0.0, 0.0}) {
    terms_.clear();
    return *this;
  }
  for (auto& [key, coeff] : terms_) coeff *= factor;
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (std::abs(it->second) <= kZeroEps)
      it = terms_.erase(it);
    else
      ++it;
  }
  return *this;
}

PauliSum operator+(PauliSum a, const PauliSum& b) { return a += b; }
PauliSum operator-(PauliSum a, const PauliSum& b) { return a -= b; }

PauliSum operator*(const PauliSum& a, const PauliSum& b) {
  if (a.length_ != b.length_)
    throw DimensionError("PauliSum product: length mismatch");
  PauliSum out(a.length_);
  for (const auto& [sa, ca] : a.terms_) {
    for (const auto& [sb, cb] : b.terms_) {
      out.add(sa * sb, ca * cb);
    }
  }
  return out;
}

PauliSum operator*(Complex factor, PauliSum a) { return a *= factor; }
PauliSum operator*(PauliSum a, Complex factor) { return a *= factor; }

PauliSum PauliSum::adjoint() const {
  PauliSum out(length_);
  for (const auto& [key, coeff] : terms_) out.add(key, std::conj(coeff));
  return out;
}

bool PauliSum::is_hermitian(double tol) const {
  for (const auto& [key, coeff] : terms_) {
    if (std::abs(coeff.imag()) > tol) return false;
  }
  return true;
}

std::string PauliSum::to_text() const {
  std::string out;
  char buf[64];
  for (const auto& [key, coeff] : terms_) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g ", coeff.real(), coeff.imag());
    out += buf;
    out += key.letters();
    out += '\n';
  }
  return out;
}

PauliSum PauliSum::from_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<std::pair<PauliString, Complex>> parsed;
  int length = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    double re = 0, im = 0;
    std::string letters;
    if (!(fields >> re >> im >> letters))
      throw std::invalid_argument("PauliSum::from_text: bad line: " + line);
    PauliString s = PauliString::parse(letters);
    if (length == 0)
      length = s.length();
    else if (s.length() != length)
      throw DimensionError("PauliSum::from_text: inconsistent string lengths");
    parsed.emplace_back(std::move(s), Complex{re, im});
  }
  if (length == 0)
    throw std::invalid_argument("PauliSum::from_text: no terms");
  PauliSum out(length);
  for (const auto& [s, c] : parsed) out.add(s, c);
  return out;
}

double max_coefficient_difference(const PauliSum& a, const PauliSum& b) {
  if (a.length() != b.length())
    throw DimensionError("max_coefficient_difference: length mismatch");
  double worst = 0.0;
  for (const auto& [key, coeff] : a.terms())
    worst = std::max(worst, std::abs(coeff - b.coefficient(key)));
  for (const auto& [key, coeff] : b.terms())
    worst = std::max(worst, std::abs(coeff - a.coefficient(key)));
  return worst;
}

double max_abs_coefficient(const PauliSum& a) {
  double worst = 0.0;
  for (const auto& [key, coeff] : a.terms())
    worst = std::max(worst, std::abs(coeff));
  return worst;
}

bool approx_equal(const PauliSum& a, const PauliSum& b, double tol) {
  return max_coefficient_difference(a, b) <= tol;
}

}  // namespace duality
