#include "cache.hpp"

#include <cstdlib>
#include <fstream>

#include <json.hpp>

namespace sptorsion::cli {

namespace {

using nlohmann::json;

constexpr const char* kFileName = "extremal.jsonl";

std::optional<extremal::ExtremalRecord> decode(const std::string& line) {
  try {
    const json row = json::parse(line);
    if (row.value("version", "") != SPTORSION_VERSION) return std::nullopt;
    const BigInt g = parse_decimal(row.at("g").get<std::string>());
    if (g < 1 || g > 1'000'000) return std::nullopt;
    extremal::ExtremalRecord r;
    r.g = g.convert_to<int>();
    r.f = parse_decimal(row.at("f").get<std::string>());
    r.h = parse_decimal(row.at("h").get<std::string>());
    const auto table = numtheory::sieve(Genus(r.g).prime_support_bound());
    r.h_factorization = numtheory::factor_smooth(r.h, table.primes());
    return r;
  } catch (const std::exception&) {
    return std::nullopt;  // unreadable lines are recomputed
  }
}

}  // namespace

RecordCache RecordCache::from_environment() {
  const char* dir = std::getenv("SPTORSION_CACHE_DIR");
  if (dir == nullptr || *dir == '\0') return RecordCache(std::nullopt);
  return RecordCache(std::filesystem::path(dir));
}

RecordCache::RecordCache(std::optional<std::filesystem::path> dir) {
  if (!dir) return;
  std::error_code ec;
  std::filesystem::create_directories(*dir, ec);
  if (ec) return;
  file_ = *dir / kFileName;
  std::ifstream in(*file_);
  for (std::string line; std::getline(in, line);) {
    if (auto r = decode(line)) rows_.insert_or_assign(r->g, std::move(*r));
  }
}

std::optional<extremal::ExtremalRecord> RecordCache::lookup(int g) const {
  auto it = rows_.find(g);
  if (it == rows_.end()) return std::nullopt;
  return it->second;
}

void RecordCache::store(const extremal::ExtremalRecord& record) {
  if (!file_ || rows_.contains(record.g)) return;
  const json row = {{"version", SPTORSION_VERSION},
                    {"g", std::to_string(record.g)},
                    {"f", record.f.str()},
                    {"h", record.h.str()}};
  std::ofstream out(*file_, std::ios::app);
  out << row.dump() << '\n';
  rows_.emplace(record.g, record);
}

}  // namespace sptorsion::cli
