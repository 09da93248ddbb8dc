#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "quenchfloq/floquet.hpp"
#include "quenchfloq/models.hpp"

namespace quenchfloq {

/// Validity time scales of the quench protocol built from the extreme
/// eigenvalues of H1 and H2.
///
/// t_c = 4 / sqrt((E1max - E1min)(E2max - E2min)) bounds the leading
/// commutator correction; t_c_prime = 1 / max |E_j| keeps the static spectrum
/// inside the first Brillouin zone whenever T <= pi t_c_prime. Either time is
/// +infinity when its denominator vanishes.
struct CharacteristicTimes {
    double t_c = 0.0;
    double t_c_prime = 0.0;
    double e1_max = 0.0;
    double e1_min = 0.0;
    double e2_max = 0.0;
    double e2_min = 0.0;
};

CharacteristicTimes characteristic_times(const ModelPair& pair);

/// Leading BCH correction -((T - t0) t0 / 2) [H1, H2].
ComplexMatrix bch_delta(const ModelPair& pair, double t0, double period);

struct BchBoundReport {
    double period = 0.0;
    double bound = 0.0;                  // (T / t_c)^2
    double bound_from_shifted_norms = 0.0; // T^2 ||H1 - a1||_2 ||H2 - a2||_2 / 4 at optimal shifts
    double max_norm = 0.0;
    double argmax_t0 = 0.0;
    std::vector<double> violations;      // t0 samples where ||Delta||_2 exceeds the bound

    double slack() const { return bound - max_norm; }
    bool ok() const { return violations.empty(); }
};

BchBoundReport bch_bound_check(const ModelPair& pair, double period, const std::vector<double>& t0_grid);

enum class DeviationMode { quasienergy, mean_energy };
enum class ZonePolicy { restricted, extended };

std::string_view to_string(DeviationMode mode);
std::string_view to_string(ZonePolicy policy);

struct DeviationReport {
    double period = 0.0;
    DeviationMode mode = DeviationMode::quasienergy;
    ZonePolicy zone_policy = ZonePolicy::restricted;
    double d_value = 0.0;
    std::size_t argmax_state = 0;
    double argmax_t0 = 0.0;
};

/// Greedy maximal-overlap assignment. Returns, for each Floquet mode j, the
/// static eigenstate index n it is paired with. Largest |<phi_n|Phi_j>|^2
/// first; rows and columns are retired after each assignment.
std::vector<std::size_t> pair_by_overlap(const ComplexMatrix& static_vectors, const ComplexMatrix& modes);

/// Nearest-zone replica of a quasienergy to a reference energy.
double unfold_quasienergy(double quasienergy, double reference, double period);

/// Maximum deviation D(T) between Floquet and static-interpolated spectra.
///
/// Restricted policy pairs by sorted index and keeps quasienergies in the
/// first zone. Extended policy pairs by maximal overlap and moves each
/// quasienergy to the zone replica closest to its partner eigenvalue.
DeviationReport deviation_metric(const ModelPair& pair, double period, const std::vector<double>& t0_grid,
                                 DeviationMode mode, ZonePolicy policy);

/// The three deviation curves at one period, computed from a single sweep.
struct DeviationSummary {
    double quasi_restricted = 0.0;
    double quasi_extended = 0.0;
    double mean = 0.0;  // mean energies, overlap pairing
};

DeviationSummary deviation_summary(const ModelPair& pair, double period, const std::vector<double>& t0_grid);

/// `points` uniform samples of [0, T] including both endpoints.
std::vector<double> uniform_t0_grid(double period, int points);

struct GsqptPoint {
    double t0_over_period = 0.0;
    double re_f0 = 0.0;
};

/// Re f_0 for the lowest-quasienergy mode at each grid point.
std::vector<GsqptPoint> gsqpt_scan(const ModelPair& pair, double period, const std::vector<double>& t0_grid);

/// First threshold crossing of |Re f_0|, threshold = rel_threshold * max |Re f_0|,
/// linearly interpolated between bracketing samples. Empty when the scan
/// starts above threshold or never reaches it.
std::optional<double> gsqpt_transition(const std::vector<GsqptPoint>& scan, double rel_threshold = 0.05);

struct EsqptResult {
    bool detected = false;
    std::optional<double> critical_excitation;  // eps_{n*+2} - eps_0
    std::size_t n_star = 0;
    std::vector<double> excitation;             // eps_n - eps_0
    std::vector<double> re_correlator;          // Re f_n
    double max_second_difference = 0.0;         // max_n |Re f_{n+1} - 2 Re f_n + Re f_{n-1}|
    bool smooth = false;                        // max_second_difference <= 5% of max |Re f_n|
};

/// Locates the excited-state separatrix on a fixed-t0 column. Below the
/// separatrix levels come in near-degenerate doublets whose spacing shrinks
/// toward it; n* minimizes eps_{n+2} - eps_n over even n. An extremum at the
/// ends of the column means no separatrix was crossed.
EsqptResult esqpt_locate(const ModelPair& pair, double period, double t0);

}  // namespace quenchfloq
