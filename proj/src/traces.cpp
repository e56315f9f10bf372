#include "cycint/traces.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <mutex>
#include <numeric>

#include "json.hpp"

#include "cycint/parallel.hpp"
#include "cycint/unit.hpp"

namespace cycint {

namespace {

bool squarefree(Int n) {
  if (n < 0) n = -n;
  for (Int p = 2; p * p <= n; ++p) {
    if (n % (p * p) == 0) return false;
  }
  return true;
}

/// b' = b mod 2|a| in the window used by the reduction step.
Int normalize_b(const Int& b, const Int& a, const Int& r) {
  const Int A = abs(a);
  const Int two_A = 2 * A;
  auto mod = [&](const Int& x) {
    Int m = x % two_A;
    if (m < 0) m += two_A;
    return m;
  };
  if (A > r) return mod(b + A - 1) - A + 1;  // -|a| < b' <= |a|
  return r - mod(r - b);                       // sqrt D - 2|a| < b' < sqrt D
}

struct MemoState {
  std::mutex mutex;
  std::optional<std::filesystem::path> dir;
};

MemoState& memo() {
  static MemoState state;
  return state;
}

std::optional<std::filesystem::path> memo_dir() {
  std::lock_guard<std::mutex> lock(memo().mutex);
  return memo().dir;
}

nlohmann::ordered_json form_json(const QForm& f) {
  return nlohmann::ordered_json::array({to_string(f.a()), to_string(f.b()), to_string(f.c())});
}

QForm form_from_json(const nlohmann::ordered_json& j) {
  return QForm(parse_int(j.at(0).get<std::string>()), parse_int(j.at(1).get<std::string>()),
               parse_int(j.at(2).get<std::string>()));
}

std::optional<ClassList> load_memo(const Int& D) {
  const auto dir = memo_dir();
  if (!dir) return std::nullopt;
  std::ifstream in(*dir / (to_string(D) + ".json"));
  if (!in) return std::nullopt;
  try {
    const auto j = nlohmann::ordered_json::parse(in);
    ClassList cl;
    cl.D = parse_int(j.at("D").get<std::string>());
    if (cl.D != D) return std::nullopt;
    cl.h = j.at("h").get<std::size_t>();
    cl.h_plus = j.at("h_plus").get<std::size_t>();
    for (const auto& f : j.at("representatives")) cl.representatives.push_back(form_from_json(f));
    for (const auto& cyc : j.at("cycles")) {
      cl.cycles.emplace_back();
      for (const auto& f : cyc) cl.cycles.back().push_back(form_from_json(f));
    }
    return cl;
  } catch (const std::exception&) {
    return std::nullopt;  // a damaged memo entry is recomputed
  }
}

void store_memo(const ClassList& cl) {
  const auto dir = memo_dir();
  if (!dir) return;
  nlohmann::ordered_json j;
  j["D"] = to_string(cl.D);
  j["h"] = cl.h;
  j["h_plus"] = cl.h_plus;
  j["representatives"] = nlohmann::ordered_json::array();
  for (const auto& f : cl.representatives) j["representatives"].push_back(form_json(f));
  j["cycles"] = nlohmann::ordered_json::array();
  for (const auto& cyc : cl.cycles) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& f : cyc) arr.push_back(form_json(f));
    j["cycles"].push_back(arr);
  }
  const PellSolution& pell = pell_cached(cl.D);
  j["pell"] = {{"t", to_string(pell.t)}, {"u", to_string(pell.u)}};
  std::filesystem::create_directories(*dir);
  const auto path = *dir / (to_string(cl.D) + ".json");
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp);
    out << j.dump(1) << '\n';
  }
  std::filesystem::rename(tmp, path);
}

double mean_re(const std::vector<RatioRow>& rows, std::size_t from, std::size_t to) {
  double s = 0.0;
  for (std::size_t i = from; i < to; ++i) s += rows[i].ratio.re.to_double();
  return s / static_cast<double>(to - from);
}

}  // namespace

bool is_discriminant(const Int& D) {
  if (D <= 0) return false;
  const Int m = D % 4;
  return (m == 0 || m == 1) && !is_square(D);
}

bool is_fundamental_discriminant(const Int& D) {
  if (!is_discriminant(D)) return false;
  if (D % 4 == 1) return squarefree(D);
  const Int m = D / 4;
  const Int m4 = m % 4;
  return (m4 == 2 || m4 == 3) && squarefree(m);
}

std::vector<long> fundamental_discriminants(long D_max, long D_min) {
  std::vector<long> out;
  for (long D = std::max(D_min, 2L); D <= D_max; ++D) {
    if (is_fundamental_discriminant(Int(D))) out.push_back(D);
  }
  return out;
}

bool is_reduced(const QForm& f) {
  const Int D = f.disc();
  const Int r = isqrt(D);
  const Int A = abs(f.a());
  const Int& b = f.b();
  // sqrt D is irrational, so m < sqrt D <=> m <= r for integers m.
  return b > 0 && b <= r && b + 2 * A >= r + 1 && 2 * A - b <= r;
}

QForm rho(const QForm& f) {
  const Int D = f.disc();
  const Int r = isqrt(D);
  const Int b = normalize_b(-f.b(), f.c(), r);
  return QForm(f.c(), b, (b * b - D) / (4 * f.c()));
}

QForm reduce(const QForm& f) {
  const Int D = f.disc();
  const Int r = isqrt(D);
  const Int b = normalize_b(f.b(), f.a(), r);
  QForm g(f.a(), b, (b * b - D) / (4 * f.a()));
  // Each step shrinks |a| until the form is reduced; the bound is generous.
  const std::size_t limit = 64 + 4 * (mpz_sizeinbase(f.a().get_mpz_t(), 2) + mpz_sizeinbase(f.c().get_mpz_t(), 2) +
                                      mpz_sizeinbase(D.get_mpz_t(), 2));
  for (std::size_t i = 0; !is_reduced(g); ++i) {
    if (i > limit) throw std::logic_error("reduction did not terminate for " + f.str());
    g = rho(g);
  }
  return g;
}

void set_memo_directory(std::optional<std::filesystem::path> dir) {
  std::lock_guard<std::mutex> lock(memo().mutex);
  memo().dir = std::move(dir);
}

ClassList class_list(const Int& D) {
  if (!is_discriminant(D)) {
    throw DomainError("not a discriminant (need D > 0, D = 0 or 1 mod 4, non-square): " + to_string(D));
  }
  if (auto cached = load_memo(D)) return *cached;
  if (!D.fits_slong_p()) throw DomainError("discriminant too large for class enumeration");
  const long Dl = D.get_si();
  const long r = isqrt(D).get_si();

  std::vector<QForm> reduced;
  for (long b = (Dl % 2 == 0) ? 2 : 1; b <= r; b += 2) {
    const long N = (Dl - b * b) / 4;  // = -ac > 0
    const long lo = std::max(1L, (r + 2 - b) / 2);
    const long hi = (r + b) / 2;
    for (long A = lo; A <= hi; ++A) {
      if (N % A != 0) continue;
      const long C = N / A;
      if (std::gcd(std::gcd(A, b), C) != 1) continue;
      reduced.emplace_back(A, b, -C);
      reduced.emplace_back(-A, b, C);
    }
  }
  std::sort(reduced.begin(), reduced.end());

  std::map<QForm, std::size_t> cycle_of;
  ClassList cl;
  cl.D = D;
  for (const QForm& start : reduced) {
    if (cycle_of.count(start)) continue;
    const std::size_t id = cl.cycles.size();
    cl.cycles.emplace_back();
    QForm g = start;
    do {
      if (!is_reduced(g) || cycle_of.count(g)) throw std::logic_error("broken reduction cycle at " + g.str());
      cycle_of.emplace(g, id);
      cl.cycles.back().push_back(g);
      g = rho(g);
    } while (!(g == start));
  }
  cl.h_plus = cl.cycles.size();

  // Wide classes: Q(x, y) and -Q(x, -y) = [-a, b, -c] are equivalent under
  // GL2(Z) with determinant -1 acting with a sign. Plain negation would pair
  // each class with the inverse of its partner instead.
  std::vector<std::size_t> parent(cl.h_plus);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < cl.h_plus; ++i) {
    const QForm& q = cl.cycles[i].front();
    const std::size_t j = cycle_of.at(reduce(QForm(-q.a(), q.b(), -q.c())));
    parent[find(i)] = find(j);
  }
  std::map<std::size_t, QForm> rep_of_group;
  for (std::size_t i = 0; i < cl.h_plus; ++i) {
    const std::size_t g = find(i);
    auto it = rep_of_group.find(g);
    if (it == rep_of_group.end()) {
      rep_of_group.emplace(g, cl.cycles[i].front());
    } else if (cl.cycles[i].front() < it->second) {
      it->second = cl.cycles[i].front();
    }
  }
  for (const auto& [g, f] : rep_of_group) cl.representatives.push_back(f);
  std::sort(cl.representatives.begin(), cl.representatives.end());
  cl.h = cl.representatives.size();
  store_memo(cl);
  return cl;
}

TraceResult trace(const FourierSeries& f, const Int& D, const Real& tol, const ValueOptions& opts, int workers,
                  Method method) {
  const ClassList cl = class_list(D);
  PrecisionScope scope(opts.bits);
  const Real two_log_eps = geodesic_length(D, opts.bits);
  // Each representative gets half the ratio tolerance, relative to its own length.
  const Real raw_tol = tol * two_log_eps / Real(2L);
  TraceResult t;
  t.D = D;
  t.h = cl.h;
  t.values.resize(cl.h);
  parallel_for(cl.h, workers, [&](std::size_t i) {
    PrecisionScope inner(opts.bits);
    const QForm& q = cl.representatives[i];
    t.values[i] = method == Method::direct ? value_direct(f, q, raw_tol, opts)
                                           : value_kernel(f, expand(roots_of_form(q).first).period, raw_tol, opts);
  });
  t.tr_f = Complex(Real(0L), Real(0L));
  Real err(0L);
  for (const auto& v : t.values) {
    t.tr_f += v.raw;
    err += v.quad_err;
  }
  t.tr_1 = Real(static_cast<long>(cl.h)) * two_log_eps;
  const Real inv = Real(1L) / t.tr_1;
  t.ratio = t.tr_f * inv;
  t.err = err * inv;
  return t;
}

RatioScan ratio_scan(const FourierSeries& f, const std::vector<long>& Ds, const Real& tol, const ValueOptions& opts,
                     int workers, Method method) {
  std::vector<long> sorted = Ds;
  std::sort(sorted.begin(), sorted.end());
  RatioScan scan;
  scan.rows.resize(sorted.size());
  parallel_for(sorted.size(), workers, [&](std::size_t i) {
    PrecisionScope scope(opts.bits);
    const TraceResult t = trace(f, Int(sorted[i]), tol, opts, 1, method);
    scan.rows[i] = RatioRow{t.D, t.h, t.ratio, t.err};
  });
  if (scan.rows.empty()) return scan;
  const std::size_t n = scan.rows.size();
  const std::size_t decile = std::max<std::size_t>(1, n / 10);
  scan.mean_bottom = mean_re(scan.rows, 0, decile);
  scan.mean_top = mean_re(scan.rows, n - decile, n);
  scan.gap_bottom = std::abs(scan.mean_bottom - 720.0);
  scan.gap_top = std::abs(scan.mean_top - 720.0);
  scan.top_closer = scan.gap_top < scan.gap_bottom;
  scan.min_re = scan.max_re = scan.rows[0].ratio.re.to_double();
  for (const auto& row : scan.rows) {
    scan.min_re = std::min(scan.min_re, row.ratio.re.to_double());
    scan.max_re = std::max(scan.max_re, row.ratio.re.to_double());
  }
  return scan;
}

std::vector<ClassNumberRow> class_number_one_scan(const FourierSeries& f, long N_max, const Real& tol,
                                                  const ValueOptions& opts, int workers) {
  if (N_max < 4) throw DomainError("class number scan needs N_max >= 4");
  std::vector<ClassNumberRow> rows(static_cast<std::size_t>(N_max - 2));
  parallel_for(rows.size(), workers, [&](std::size_t i) {
    PrecisionScope scope(opts.bits);
    ClassNumberRow row;
    row.N = static_cast<long>(i) + 3;
    row.D = Int(row.N) * row.N - 4;
    const ClassList cl = class_list(row.D);
    row.h = cl.h;
    row.h_plus = cl.h_plus;
    row.jnor = value_kernel(f, Digits{Int(row.N)}, tol * geodesic_length(row.D, opts.bits), opts).normalized;
    row.gap720 = abs(row.jnor.re - Real(720L));
    rows[i] = std::move(row);
  });
  return rows;
}

}  // namespace cycint
