#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "varprop/types.hpp"

namespace varprop {

enum class Spin : int { kUp = 0, kDown = 1 };

/// Occupation-number basis of an N-site chain with two spin species.
/// A state is a 2N-bit word; mode ordering is site-major with up before
/// down (site 0 up, site 0 down, site 1 up, ...), and fermionic signs follow
/// from that fixed ordering: an operator on mode m picks up the parity of
/// the occupied modes below m.
class FockBasis {
 public:
  explicit FockBasis(int n_sites);

  int n_sites() const { return n_sites_; }
  int n_modes() const { return 2 * n_sites_; }
  std::uint64_t n_states() const { return std::uint64_t{1} << (2 * n_sites_); }

  static int mode(int site, Spin spin) { return 2 * site + static_cast<int>(spin); }

  static bool occupied(std::uint64_t word, int m) { return (word >> m) & 1; }

  struct Amplitude {
    std::uint64_t word;
    int sign;  // +1 or -1
  };

  /// c_m and c^dag_m with the Jordan-Wigner parity sign; nullopt when the
  /// operator annihilates the state.
  static std::optional<Amplitude> annihilate(std::uint64_t word, int m);
  static std::optional<Amplitude> create(std::uint64_t word, int m);

  /// c^dag_{i spin} c_{j spin}.
  static std::optional<Amplitude> hop(std::uint64_t word, int site_to, int site_from, Spin spin);

  int particle_count(std::uint64_t word) const;
  /// Twice S_z (so it stays integral): n_up - n_down.
  int sz2(std::uint64_t word) const;
  int doublon_count(std::uint64_t word) const;

  /// True when every site holds exactly one fermion.
  bool singly_occupied(std::uint64_t word) const;

  /// For a singly-occupied word, the N-bit spin word with bit s set when
  /// site s carries an up fermion. One-to-one and S_z preserving.
  std::uint64_t spin_word(std::uint64_t word) const;

  /// All basis words with the given particle number and 2 S_z, ascending.
  const std::vector<std::uint64_t>& sector(int n_particles, int sz2) const;

  /// The half-filled sector (N particles, all S_z), ascending.
  std::vector<std::uint64_t> half_filled_sector() const;

  /// Singly-occupied words ordered by their spin word, giving the canonical
  /// bijection onto the 2^N spin basis.
  std::vector<std::uint64_t> singly_occupied_words() const;

 private:
  int n_sites_;
  std::map<std::pair<int, int>, std::vector<std::uint64_t>> sectors_;
};

}  // namespace varprop
