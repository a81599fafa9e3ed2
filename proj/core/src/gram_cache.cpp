#include "qfock/gram_cache.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <charconv>
#include <cstring>
#include <fstream>

#include "qfock/symmetrizer.hpp"

namespace qfock {

namespace {

std::string format_sci(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

}  // namespace

GramCache::GramCache(QSpec q, std::size_t memory_budget_bytes)
    : q_(std::move(q)), budget_bytes_(memory_budget_bytes) {}

std::size_t GramCache::degree_bytes(int degree) const {
  const Index dim = block_dim(q_.n_letters(), degree);
  return 2 * sizeof(double) * static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim);
}

bool GramCache::has_degree(int degree) const {
  return degree >= 0 && degree < static_cast<int>(degrees_.size()) &&
         degrees_[degree].has_value();
}

int GramCache::max_cached_degree() const {
  for (int n = static_cast<int>(degrees_.size()) - 1; n >= 0; --n)
    if (degrees_[n]) return n;
  return -1;
}

const GramDegree& GramCache::entry(int degree) const {
  if (!has_degree(degree))
    throw StateError("Gram cache has no degree " + std::to_string(degree) +
                     "; call ensure_degree first");
  return *degrees_[degree];
}

void GramCache::ensure_up_to(int degree) {
  for (int n = 0; n <= degree; ++n) ensure_degree(n);
}

void GramCache::ensure_degree(int degree) {
  if (degree < 0) throw ArgumentError("degree must be >= 0");
  if (has_degree(degree)) return;
  if (degree > 0 && !has_degree(degree - 1)) ensure_degree(degree - 1);

  const std::size_t need = degree_bytes(degree);
  if (bytes_in_use_ + need > budget_bytes_)
    throw CapabilityError("materializing P_" + std::to_string(degree) + " needs " +
                              std::to_string(need) + " bytes on top of " +
                              std::to_string(bytes_in_use_) + " in use; budget is " +
                              std::to_string(budget_bytes_),
                          bytes_in_use_ + need, budget_bytes_);

  GramDegree d;
  d.gram = degree == 0 ? Eigen::MatrixXd::Ones(1, 1)
                       : symmetrizer_recursive(q_, degree, degrees_[degree - 1]->gram);

  // Cholesky with a strict relative pivot floor. Definiteness holds for
  // q_max < 1; a sub-floor pivot means precision or degree limits were hit
  // and must surface as an error, not a regularization.
  Eigen::LLT<Eigen::MatrixXd> llt(d.gram);
  const double floor = kPositivityFloor * d.gram.diagonal().maxCoeff();
  bool ok = llt.info() == Eigen::Success;
  double worst_pivot = 0.0;
  if (ok) {
    d.chol = llt.matrixL();
    worst_pivot = d.chol.diagonal().minCoeff();
    ok = worst_pivot * worst_pivot > floor;
  }
  if (!ok) {
    const double min_eig =
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(d.gram, Eigen::EigenvaluesOnly)
            .eigenvalues()
            .minCoeff();
    throw DefinitenessError("Gram matrix P_" + std::to_string(degree) +
                                " failed the Cholesky pivot floor: min eigenvalue " +
                                format_sci(min_eig) + ", pivot floor " + format_sci(floor),
                            degree, min_eig);
  }

  if (static_cast<int>(degrees_.size()) <= degree) degrees_.resize(degree + 1);
  degrees_[degree] = std::move(d);
  bytes_in_use_ += need;
}

const Eigen::MatrixXd& GramCache::gram(int degree) const { return entry(degree).gram; }
const Eigen::MatrixXd& GramCache::chol(int degree) const { return entry(degree).chol; }

double GramCache::positivity_report(int degree) const {
  const GramDegree& d = entry(degree);
  if (!d.min_eig) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(d.gram, Eigen::EigenvaluesOnly);
    d.min_eig = solver.eigenvalues().minCoeff();
    d.max_eig = solver.eigenvalues().maxCoeff();
  }
  // The absolute eigenvalue floor; the construction-time guard on the
  // Cholesky pivots is relative and lives in ensure_degree.
  if (*d.min_eig <= kPositivityFloor)
    throw DefinitenessError("P_" + std::to_string(degree) + " min eigenvalue " +
                                format_sci(*d.min_eig) + " at or below floor " +
                                format_sci(kPositivityFloor),
                            degree, *d.min_eig);
  return *d.min_eig;
}

double GramCache::max_eigenvalue(int degree) const {
  positivity_report(degree);
  return *entry(degree).max_eig;
}

double GramCache::block_inner(int degree, const Eigen::VectorXd& a,
                              const Eigen::VectorXd& b) const {
  const GramDegree& d = entry(degree);
  if (a.size() != d.gram.rows() || b.size() != d.gram.rows())
    throw ArgumentError("block has wrong dimension for degree " + std::to_string(degree));
  return a.dot(d.gram * b);
}

double GramCache::inner(const FockVector& u, const FockVector& v) const {
  if (u.n_letters() != q_.n_letters() || v.n_letters() != q_.n_letters())
    throw ArgumentError("vector alphabet does not match the cache");
  double total = 0.0;
  const int top = std::min(u.max_degree(), v.max_degree());
  for (int n = 0; n <= top; ++n) {
    const auto& un = u.block(n);
    const auto& vn = v.block(n);
    if (un.isZero(0.0) || vn.isZero(0.0)) continue;
    total += block_inner(n, un, vn);
  }
  return total;
}

double GramCache::norm(const FockVector& v) const { return std::sqrt(inner(v, v)); }

double GramCache::operator_norm(const Eigen::MatrixXd& a, int from_degree,
                                int to_degree) const {
  const GramDegree& from = entry(from_degree);
  const GramDegree& to = entry(to_degree);
  if (a.cols() != from.gram.rows() || a.rows() != to.gram.rows())
    throw ArgumentError("operator block shape does not match (from, to) degrees");
  // |A|_Q = |L_to^T A L_from^-T|_2: transport both deformed inner products
  // to free ones through the Cholesky isometries. The right solve is done
  // as L_from^-1 (L_to^T A)^T transposed back.
  Eigen::MatrixXd lifted = (to.chol.transpose() * a).transpose();
  Eigen::MatrixXd transported =
      from.chol.triangularView<Eigen::Lower>().solve(lifted).transpose();
  if (transported.rows() == 1 || transported.cols() == 1)
    return transported.norm();
  Eigen::BDCSVD<Eigen::MatrixXd> svd(transported);
  return svd.singularValues()(0);
}

// Snapshot layout (native endianness, doubles in Eigen column-major order):
//   magic "QFGRAM01" | u64 hash(QSpec) | i32 N | i32 entry count
//   per entry: i32 degree | i64 dim | dim*dim gram | dim*dim chol
namespace {
constexpr char kCacheMagic[8] = {'Q', 'F', 'G', 'R', 'A', 'M', '0', '1'};

template <typename T>
void write_pod(std::ostream& os, const T& value) {
  os.write(reinterpret_cast<const char*>(&value), sizeof value);
}

template <typename T>
bool read_pod(std::istream& is, T& value) {
  is.read(reinterpret_cast<char*>(&value), sizeof value);
  return bool(is);
}
}  // namespace

void GramCache::save(const std::string& path) const {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw StateError("cannot open gram cache file for writing: " + path);
  os.write(kCacheMagic, sizeof kCacheMagic);
  write_pod(os, q_.hash());
  write_pod(os, static_cast<std::int32_t>(q_.n_letters()));
  std::int32_t count = 0;
  for (const auto& d : degrees_)
    if (d) ++count;
  write_pod(os, count);
  for (int n = 0; n < static_cast<int>(degrees_.size()); ++n) {
    if (!degrees_[n]) continue;
    const GramDegree& d = *degrees_[n];
    write_pod(os, static_cast<std::int32_t>(n));
    write_pod(os, static_cast<std::int64_t>(d.gram.rows()));
    os.write(reinterpret_cast<const char*>(d.gram.data()),
             sizeof(double) * d.gram.size());
    os.write(reinterpret_cast<const char*>(d.chol.data()),
             sizeof(double) * d.chol.size());
  }
  if (!os) throw StateError("short write to gram cache file: " + path);
}

int GramCache::load(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) return 0;
  char magic[8];
  is.read(magic, sizeof magic);
  if (!is || std::memcmp(magic, kCacheMagic, sizeof magic) != 0)
    throw StateError("gram cache file has wrong magic/version: " + path);
  std::uint64_t hash = 0;
  std::int32_t n_letters = 0, count = 0;
  if (!read_pod(is, hash) || !read_pod(is, n_letters) || !read_pod(is, count))
    throw StateError("truncated gram cache header: " + path);
  if (hash != q_.hash() || n_letters != q_.n_letters())
    throw StateError("gram cache file was built for a different deformation: " + path);
  int loaded = 0;
  for (std::int32_t e = 0; e < count; ++e) {
    std::int32_t degree = 0;
    std::int64_t dim = 0;
    if (!read_pod(is, degree) || !read_pod(is, dim))
      throw StateError("truncated gram cache entry: " + path);
    if (degree < 0 || dim != block_dim(q_.n_letters(), degree))
      throw StateError("gram cache entry has inconsistent dimensions: " + path);
    const std::size_t need = degree_bytes(degree);
    if (bytes_in_use_ + need > budget_bytes_)
      throw CapabilityError("gram cache file entry for degree " + std::to_string(degree) +
                                " exceeds the memory budget",
                            bytes_in_use_ + need, budget_bytes_);
    GramDegree d;
    d.gram.resize(dim, dim);
    d.chol.resize(dim, dim);
    is.read(reinterpret_cast<char*>(d.gram.data()), sizeof(double) * d.gram.size());
    is.read(reinterpret_cast<char*>(d.chol.data()), sizeof(double) * d.chol.size());
    if (!is) throw StateError("truncated gram cache payload: " + path);
    if (has_degree(degree)) continue;
    if (static_cast<int>(degrees_.size()) <= degree) degrees_.resize(degree + 1);
    degrees_[degree] = std::move(d);
    bytes_in_use_ += need;
    ++loaded;
  }
  return loaded;
}

double deformed_inner(const GramCache& cache, const FockVector& u, const FockVector& v) {
  return cache.inner(u, v);
}

double deformed_operator_norm(const GramCache& cache, const Eigen::MatrixXd& a,
                              int from_degree, int to_degree) {
  return cache.operator_norm(a, from_degree, to_degree);
}

double positivity_report(const GramCache& cache, int degree) {
  return cache.positivity_report(degree);
}

}  // namespace qfock
