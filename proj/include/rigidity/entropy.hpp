#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "rigidity/reps.hpp"

namespace rigidity {

enum class Functional {
  Lambda1,            // lambda_1
  Hilbert,            // (lambda_1 - lambda_d) / 2
  Phi,                // phi . lambda for a coefficient vector phi
  TranslationLength,  // hyperbolic translation length of a Klein-model image
};

struct FunctionalSpec {
  Functional kind = Functional::Lambda1;
  Vec phi;  // Phi only, length d
  std::string label() const;
};

struct PeriodEntry {
  Word word;
  double value = 0.0;
};

// Entries sorted by (value, word); values strictly positive.
struct PeriodSpectrum {
  std::vector<PeriodEntry> entries;
  std::string functional_label;
  int max_len = 0;

  std::size_t size() const { return entries.size(); }
  std::vector<double> values() const;
  // Class list in canonical word order, for comparing spectra.
  std::vector<Word> classes() const;
};

class NonPositivePeriod : public std::domain_error {
 public:
  NonPositivePeriod(const std::string& what, Word word) : std::domain_error(what), word_(std::move(word)) {}
  const Word& word() const { return word_; }

 private:
  Word word_;
};

PeriodSpectrum period_spectrum(const Representation& rep, const FunctionalSpec& f, const std::vector<Word>& classes,
                               int max_len);
PeriodSpectrum period_spectrum(const Representation& rep, const FunctionalSpec& f, int max_len);
// Spectrum from explicit values; sorts and validates.
PeriodSpectrum make_spectrum(std::vector<PeriodEntry> entries, std::string label, int max_len);

struct WindowPolicy {
  double q_lo = 0.25;
  double q_hi = 0.95;
};

struct GrowthEstimate {
  double h = 0.0;
  double t_lo = 0.0;
  double t_hi = 0.0;
  double residual = 0.0;  // RMS deviation of the fit
  std::size_t count_at_hi = 0;
};

class DegenerateWindow : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr std::size_t kMinSpectrum = 50;
// Values within this relative distance count as tied when evaluating N(t), so
// classes with equal periods (such as [g] and [g^-1]) are grouped the same way
// in spectra that agree up to rounding.
inline constexpr double kTieTol = 1e-9;

// Least-squares slope of log N(t) against t at the sorted values whose index
// lies in [q_lo (n-1), q_hi (n-1)], N(t) = #{values <= t (1 + kTieTol)}.
GrowthEstimate growth_rate(const std::vector<double>& sorted_values, const WindowPolicy& w = {});
GrowthEstimate growth_rate(const PeriodSpectrum& ps, const WindowPolicy& w = {});

// growth_rate(a).h / growth_rate(b).h; the class lists must agree.
double entropy_ratio(const PeriodSpectrum& a, const PeriodSpectrum& b, const WindowPolicy& w = {});

void write_spectrum_csv(std::ostream& os, const PeriodSpectrum& ps);
nlohmann::json to_json(const GrowthEstimate& g);

}  // namespace rigidity
