#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cycletrace {

enum class Errc {
  malformed_row,
  self_loop,
  duplicate_edge_key,
  negative_value,
  missing_edge,
  unknown_vertex,
  no_cycle_through_edge,
  empty_candidate_set,
  inconsistent_state,
  unsorted_ledger,
  budget_exceeded,
  invalid_config,
  contract_violation,
};

std::string_view to_string(Errc code) noexcept;

/// Single exception type for every library failure. `row()` is set for
/// ledger-ingestion errors and holds the 1-based line number in the source.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what, std::optional<std::size_t> row = std::nullopt)
      : std::runtime_error(what), code_(code), row_(row) {}

  Errc code() const noexcept { return code_; }
  std::optional<std::size_t> row() const noexcept { return row_; }

 private:
  Errc code_;
  std::optional<std::size_t> row_;
};

}  // namespace cycletrace
