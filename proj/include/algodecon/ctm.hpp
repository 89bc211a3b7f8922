#pragma once

// Coding Theorem Method: exhaustive enumeration of small Turing machines
// (1D tapes and 2D "turmite" grids), their output frequency distribution,
// and the complexity estimates derived from it.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace algodecon::ctm {

enum class Dim : int { One = 1, Two = 2 };

struct MachineClass {
  int states = 2;
  int symbols = 2;
  Dim dim = Dim::One;

  int moves() const { return dim == Dim::One ? 2 : 4; }
  /// Choices per transition entry: 2 halting writes + write*move*next-state.
  std::uint64_t entry_choices() const;
  int entries() const { return states * symbols; }

  friend bool operator==(const MachineClass&, const MachineClass&) = default;
};

/// Number of machines in the class. Throws CapacityError past 2^64 - 1.
std::uint64_t class_size(const MachineClass& cls);

/// Left/Right are the only moves of 1D machines; 2D machines use all four.
enum class Move : std::uint8_t { Left = 0, Right = 1, Up = 2, Down = 3 };

struct Transition {
  static constexpr int kHalt = -1;

  std::uint8_t write = 0;
  Move move = Move::Left;
  int next = kHalt;

  bool halts() const { return next == kHalt; }
  friend bool operator==(const Transition&, const Transition&) = default;
};

/// Transition table indexed by (state, read-symbol). The index bijection is
/// mixed-radix over the entries in (state, symbol) order, first entry most
/// significant; within an entry the codes are 0/1 = halt writing 0/1, then
/// 2 + (next * moves + move) * 2 + write.
class TuringMachine {
 public:
  TuringMachine(MachineClass cls, std::vector<Transition> table);

  static TuringMachine from_index(const MachineClass& cls, std::uint64_t index);

  std::uint64_t index() const;
  const MachineClass& machine_class() const { return cls_; }
  const Transition& at(int state, int symbol) const { return table_[state * cls_.symbols + symbol]; }
  const std::vector<Transition>& table() const { return table_; }

  /// Swap symbols 0 and 1 in reads and writes.
  TuringMachine complemented() const;
  /// Swap Left/Right (and Up/Down).
  TuringMachine mirrored() const;

  friend bool operator==(const TuringMachine&, const TuringMachine&) = default;

 private:
  MachineClass cls_;
  std::vector<Transition> table_;
};

std::uint64_t encode_transition(const MachineClass& cls, const Transition& t);
Transition decode_transition(const MachineClass& cls, std::uint64_t code);

/// Visits machines with index in [lo, hi) in increasing index order.
/// Throws UsageError for unsupported classes and bad ranges.
void enumerate_machines(const MachineClass& cls, std::uint64_t lo, std::uint64_t hi,
                        const std::function<void(const TuringMachine&)>& visit);
void enumerate_machines(const MachineClass& cls, const std::function<void(const TuringMachine&)>& visit);

enum class RunStatus { Halted, CutoffExceeded };

struct RunOutcome {
  RunStatus status = RunStatus::CutoffExceeded;
  /// Object key of the visited region (see object keys below); empty unless
  /// halted or a snapshot was requested.
  std::string output;
  std::uint64_t steps = 0;
};

/// Runs from a tape of `blank` symbols with the head at the origin. Every
/// step writes under the head, so the output is the span of visited cells
/// (1D) or their bounding rectangle (2D).
RunOutcome run_machine(const TuringMachine& m, std::uint64_t cutoff, std::uint8_t blank = 0,
                       bool snapshot = false);

// Object keys: 1D objects are raw "0101" strings; 2D objects are
// "RxC:" followed by the row-major cells, e.g. "3x3:010110001".
std::string grid_key(int rows, int cols, std::string_view cells);
struct KeyShape {
  int rows = 0;
  int cols = 0;
  std::string_view cells;
};
KeyShape parse_key(std::string_view key, Dim dim);
std::string complement_key(std::string_view key);

class CtmTable {
 public:
  CtmTable() = default;
  CtmTable(MachineClass cls, std::uint64_t cutoff) : cls_(cls), cutoff_(cutoff) {}

  const MachineClass& machine_class() const { return cls_; }
  std::uint64_t cutoff() const { return cutoff_; }
  std::uint64_t total_runs() const { return total_; }
  std::uint64_t halted_runs() const { return halted_; }
  bool external() const { return external_; }
  void set_external(bool v) { external_ = v; }
  const std::map<std::string, std::uint64_t>& counts() const { return counts_; }

  std::optional<std::uint64_t> count(std::string_view key) const;
  /// -log2(count / halted) for keys present in the table.
  std::optional<double> ctm_bits(std::string_view key) const;
  double max_bits() const;
  std::size_t entries_with_shape(int rows, int cols) const;

  /// Adds a run outcome. Non-halting runs only increase the total.
  void record(const RunOutcome& r);
  void add_count(const std::string& key, std::uint64_t n);
  void add_runs(std::uint64_t total, std::uint64_t halted);
  /// Count-additive merge of a table over a disjoint machine range.
  void merge(const CtmTable& other);

  friend bool operator==(const CtmTable&, const CtmTable&) = default;

 private:
  MachineClass cls_;
  std::uint64_t cutoff_ = 0;
  std::uint64_t total_ = 0;
  std::uint64_t halted_ = 0;
  bool external_ = false;
  std::map<std::string, std::uint64_t> counts_;
};

std::uint64_t default_cutoff(const MachineClass& cls);

/// Runs every machine in [lo, hi) from a blank-0 tape. Each machine also
/// stands for its symbol-swapped twin run from a blank-1 tape (the class is
/// closed under the swap), so every machine contributes two runs: its
/// output and the complement of its output.
CtmTable build_table_range(const MachineClass& cls, std::uint64_t cutoff, std::uint64_t lo, std::uint64_t hi);

/// Full-class table; identical for any worker count.
CtmTable build_table(const MachineClass& cls, std::uint64_t cutoff, unsigned workers = 1);

void save_table(const CtmTable& t, std::ostream& out);
CtmTable load_table(std::istream& in);
void save_table_file(const CtmTable& t, const std::string& path);
CtmTable load_table_file(const std::string& path);

/// CRC-32 (hex) over the "key count\n" row lines in key order.
std::string table_checksum(const CtmTable& t);

}  // namespace algodecon::ctm
