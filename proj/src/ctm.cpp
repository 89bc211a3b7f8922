#include "algodecon/ctm.hpp"

#include <zlib.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "algodecon/error.hpp"

namespace algodecon::ctm {

namespace {

void check_supported(const MachineClass& cls) {
  if (cls.states < 1) throw UsageError("machine class needs at least one state");
  if (cls.symbols != 2) throw UsageError("only 2-symbol machines are supported");
  if (cls.dim != Dim::One && cls.dim != Dim::Two) throw UsageError("dimension must be 1 or 2");
}

// Decoded transition table in flat arrays; the hot loops below index these.
struct FlatMachine {
  static constexpr int kMaxEntries = 64;
  std::uint8_t write[kMaxEntries];
  std::uint8_t move[kMaxEntries];
  std::int8_t next[kMaxEntries];
  int entries = 0;

  void set(int e, const Transition& t) {
    write[e] = t.write;
    move[e] = static_cast<std::uint8_t>(t.move);
    next[e] = static_cast<std::int8_t>(t.next);
  }
};

FlatMachine flatten(const TuringMachine& m) {
  FlatMachine f;
  f.entries = static_cast<int>(m.table().size());
  if (f.entries > FlatMachine::kMaxEntries) throw CapacityError("machine too large for the simulator");
  for (int e = 0; e < f.entries; ++e) f.set(e, m.table()[e]);
  return f;
}

// Tape scratch space shared by consecutive runs; only the visited span is
// cleared after each run.
class Tape1D {
 public:
  explicit Tape1D(std::uint64_t cutoff) : cells_(2 * cutoff + 3, 0), origin_(cutoff + 1) {}

  // Returns the number of steps; `halted` set when a halting entry fired.
  std::uint64_t run(const FlatMachine& m, std::uint64_t cutoff, std::uint8_t blank, bool& halted) {
    if (blank != blank_) {
      std::fill(cells_.begin(), cells_.end(), blank);
      blank_ = blank;
    }
    std::size_t pos = origin_;
    lo_ = hi_ = pos;
    int state = 0;
    std::uint64_t steps = 0;
    halted = false;
    std::uint8_t* tape = cells_.data();
    while (steps < cutoff) {
      const int e = state * 2 + tape[pos];
      tape[pos] = m.write[e];
      if (pos < lo_) lo_ = pos;
      if (pos > hi_) hi_ = pos;
      ++steps;
      if (m.next[e] < 0) {
        halted = true;
        break;
      }
      pos = m.move[e] == 0 ? pos - 1 : pos + 1;
      state = m.next[e];
    }
    return steps;
  }

  std::string output() const {
    std::string out(hi_ - lo_ + 1, '0');
    for (std::size_t i = lo_; i <= hi_; ++i) out[i - lo_] = static_cast<char>('0' + cells_[i]);
    return out;
  }

  void clear() { std::fill(cells_.begin() + lo_, cells_.begin() + hi_ + 1, blank_); }

 private:
  std::vector<std::uint8_t> cells_;
  std::size_t origin_;
  std::size_t lo_ = 0;
  std::size_t hi_ = 0;
  std::uint8_t blank_ = 0;
};

class Tape2D {
 public:
  explicit Tape2D(std::uint64_t cutoff)
      : width_(2 * cutoff + 3), cells_(width_ * width_, 0), origin_(cutoff + 1) {}

  std::uint64_t run(const FlatMachine& m, std::uint64_t cutoff, std::uint8_t blank, bool& halted) {
    if (blank != blank_) {
      std::fill(cells_.begin(), cells_.end(), blank);
      blank_ = blank;
    }
    std::size_t r = origin_, c = origin_;
    rlo_ = rhi_ = r;
    clo_ = chi_ = c;
    int state = 0;
    std::uint64_t steps = 0;
    halted = false;
    std::uint8_t* grid = cells_.data();
    while (steps < cutoff) {
      std::uint8_t& cell = grid[r * width_ + c];
      const int e = state * 2 + cell;
      cell = m.write[e];
      if (r < rlo_) rlo_ = r;
      if (r > rhi_) rhi_ = r;
      if (c < clo_) clo_ = c;
      if (c > chi_) chi_ = c;
      ++steps;
      if (m.next[e] < 0) {
        halted = true;
        break;
      }
      switch (m.move[e]) {
        case 0: --c; break;
        case 1: ++c; break;
        case 2: --r; break;
        default: ++r; break;
      }
      state = m.next[e];
    }
    return steps;
  }

  std::string output() const {
    const int rows = static_cast<int>(rhi_ - rlo_ + 1);
    const int cols = static_cast<int>(chi_ - clo_ + 1);
    std::string cells(static_cast<std::size_t>(rows) * cols, '0');
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j)
        cells[static_cast<std::size_t>(i) * cols + j] =
            static_cast<char>('0' + cells_[(rlo_ + i) * width_ + clo_ + j]);
    return grid_key(rows, cols, cells);
  }

  void clear() {
    for (std::size_t i = rlo_; i <= rhi_; ++i)
      std::fill(cells_.begin() + i * width_ + clo_, cells_.begin() + i * width_ + chi_ + 1, blank_);
  }

 private:
  std::size_t width_;
  std::vector<std::uint8_t> cells_;
  std::size_t origin_;
  std::size_t rlo_ = 0, rhi_ = 0, clo_ = 0, chi_ = 0;
  std::uint8_t blank_ = 0;
};

std::string complement_cells(std::string_view s) {
  std::string out(s);
  for (char& ch : out) ch = ch == '0' ? '1' : '0';
  return out;
}

bool parse_u64(std::string_view text, std::uint64_t& value) {
  if (text.empty()) return false;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  return ec == std::errc() && ptr == text.data() + text.size();
}

}  // namespace

std::uint64_t MachineClass::entry_choices() const {
  return 2 + 2ULL * static_cast<std::uint64_t>(moves()) * static_cast<std::uint64_t>(states);
}

std::uint64_t class_size(const MachineClass& cls) {
  check_supported(cls);
  const std::uint64_t base = cls.entry_choices();
  std::uint64_t n = 1;
  for (int i = 0; i < cls.entries(); ++i) {
    if (n > std::numeric_limits<std::uint64_t>::max() / base)
      throw CapacityError("machine class exceeds the 64-bit index width");
    n *= base;
  }
  return n;
}

std::uint64_t encode_transition(const MachineClass& cls, const Transition& t) {
  if (t.halts()) return t.write;
  return 2 + (static_cast<std::uint64_t>(t.next) * cls.moves() + static_cast<std::uint64_t>(t.move)) * 2 + t.write;
}

Transition decode_transition(const MachineClass& cls, std::uint64_t code) {
  Transition t;
  if (code < 2) {
    t.write = static_cast<std::uint8_t>(code);
    t.move = Move::Left;
    t.next = Transition::kHalt;
    return t;
  }
  code -= 2;
  t.write = static_cast<std::uint8_t>(code % 2);
  t.move = static_cast<Move>((code / 2) % cls.moves());
  t.next = static_cast<int>(code / (2 * cls.moves()));
  return t;
}

TuringMachine::TuringMachine(MachineClass cls, std::vector<Transition> table)
    : cls_(cls), table_(std::move(table)) {
  check_supported(cls_);
  if (static_cast<int>(table_.size()) != cls_.entries())
    throw UsageError("transition table must cover every (state, symbol) pair");
  for (auto& t : table_) {
    if (t.write > 1) throw UsageError("write symbol out of range");
    if (t.next < Transition::kHalt || t.next >= cls_.states) throw UsageError("next state out of range");
    if (t.halts()) {
      t.move = Move::Left;  // halting entries carry no move
    } else if (static_cast<int>(t.move) >= cls_.moves()) {
      throw UsageError("move not available in this dimension");
    }
  }
}

TuringMachine TuringMachine::from_index(const MachineClass& cls, std::uint64_t index) {
  const std::uint64_t size = class_size(cls);
  if (index >= size) throw UsageError("machine index out of range");
  const std::uint64_t base = cls.entry_choices();
  std::vector<Transition> table(cls.entries());
  for (int e = cls.entries() - 1; e >= 0; --e) {
    table[e] = decode_transition(cls, index % base);
    index /= base;
  }
  return TuringMachine(cls, std::move(table));
}

std::uint64_t TuringMachine::index() const {
  const std::uint64_t base = cls_.entry_choices();
  std::uint64_t idx = 0;
  for (const auto& t : table_) idx = idx * base + encode_transition(cls_, t);
  return idx;
}

TuringMachine TuringMachine::complemented() const {
  std::vector<Transition> out(table_.size());
  for (int s = 0; s < cls_.states; ++s)
    for (int sym = 0; sym < 2; ++sym) {
      Transition t = at(s, 1 - sym);
      t.write = static_cast<std::uint8_t>(1 - t.write);
      out[s * 2 + sym] = t;
    }
  return TuringMachine(cls_, std::move(out));
}

TuringMachine TuringMachine::mirrored() const {
  std::vector<Transition> out = table_;
  for (auto& t : out) {
    if (t.halts()) continue;
    switch (t.move) {
      case Move::Left: t.move = Move::Right; break;
      case Move::Right: t.move = Move::Left; break;
      case Move::Up: t.move = Move::Down; break;
      case Move::Down: t.move = Move::Up; break;
    }
  }
  return TuringMachine(cls_, std::move(out));
}

void enumerate_machines(const MachineClass& cls, std::uint64_t lo, std::uint64_t hi,
                        const std::function<void(const TuringMachine&)>& visit) {
  const std::uint64_t size = class_size(cls);
  if (lo > hi || hi > size) throw UsageError("machine index range out of bounds");
  for (std::uint64_t i = lo; i < hi; ++i) visit(TuringMachine::from_index(cls, i));
}

void enumerate_machines(const MachineClass& cls, const std::function<void(const TuringMachine&)>& visit) {
  enumerate_machines(cls, 0, class_size(cls), visit);
}

RunOutcome run_machine(const TuringMachine& m, std::uint64_t cutoff, std::uint8_t blank, bool snapshot) {
  if (cutoff < 1) throw UsageError("cutoff must be at least 1");
  if (blank > 1) throw UsageError("blank symbol must be 0 or 1");
  const FlatMachine flat = flatten(m);
  RunOutcome out;
  bool halted = false;
  if (m.machine_class().dim == Dim::One) {
    Tape1D tape(cutoff);
    out.steps = tape.run(flat, cutoff, blank, halted);
    if (halted || snapshot) out.output = tape.output();
  } else {
    Tape2D tape(cutoff);
    out.steps = tape.run(flat, cutoff, blank, halted);
    if (halted || snapshot) out.output = tape.output();
  }
  out.status = halted ? RunStatus::Halted : RunStatus::CutoffExceeded;
  return out;
}

std::string grid_key(int rows, int cols, std::string_view cells) {
  std::string key = std::to_string(rows) + "x" + std::to_string(cols) + ":";
  key.append(cells);
  return key;
}

KeyShape parse_key(std::string_view key, Dim dim) {
  KeyShape shape;
  auto all_binary = [](std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char ch) { return ch == '0' || ch == '1'; });
  };
  if (dim == Dim::One) {
    if (!all_binary(key)) throw TableError("bad 1D object key: " + std::string(key));
    shape.rows = 1;
    shape.cols = static_cast<int>(key.size());
    shape.cells = key;
    return shape;
  }
  const auto colon = key.find(':');
  const auto x = key.find('x');
  if (colon == std::string_view::npos || x == std::string_view::npos || x > colon)
    throw TableError("bad 2D object key: " + std::string(key));
  std::uint64_t r = 0, c = 0;
  if (!parse_u64(key.substr(0, x), r) || !parse_u64(key.substr(x + 1, colon - x - 1), c) || r == 0 || c == 0)
    throw TableError("bad 2D object key dimensions: " + std::string(key));
  shape.cells = key.substr(colon + 1);
  if (!all_binary(shape.cells) || shape.cells.size() != r * c)
    throw TableError("2D object key cells do not match dimensions: " + std::string(key));
  shape.rows = static_cast<int>(r);
  shape.cols = static_cast<int>(c);
  return shape;
}

std::string complement_key(std::string_view key) {
  const auto colon = key.find(':');
  if (colon == std::string_view::npos) return complement_cells(key);
  return std::string(key.substr(0, colon + 1)) + complement_cells(key.substr(colon + 1));
}

std::optional<std::uint64_t> CtmTable::count(std::string_view key) const {
  auto it = counts_.find(std::string(key));
  if (it == counts_.end()) return std::nullopt;
  return it->second;
}

std::optional<double> CtmTable::ctm_bits(std::string_view key) const {
  auto c = count(key);
  if (!c) return std::nullopt;
  return -std::log2(static_cast<double>(*c) / static_cast<double>(halted_));
}

double CtmTable::max_bits() const {
  std::uint64_t min_count = std::numeric_limits<std::uint64_t>::max();
  for (const auto& [key, n] : counts_) min_count = std::min(min_count, n);
  if (counts_.empty()) return 0.0;
  return -std::log2(static_cast<double>(min_count) / static_cast<double>(halted_));
}

std::size_t CtmTable::entries_with_shape(int rows, int cols) const {
  std::size_t n = 0;
  for (const auto& [key, count] : counts_) {
    const auto shape = parse_key(key, cls_.dim);
    if (shape.rows == rows && shape.cols == cols) ++n;
  }
  return n;
}

void CtmTable::record(const RunOutcome& r) {
  ++total_;
  if (r.status != RunStatus::Halted || r.output.empty()) return;
  ++halted_;
  ++counts_[r.output];
}

void CtmTable::add_count(const std::string& key, std::uint64_t n) { counts_[key] += n; }

void CtmTable::add_runs(std::uint64_t total, std::uint64_t halted) {
  total_ += total;
  halted_ += halted;
}

void CtmTable::merge(const CtmTable& other) {
  if (!(other.cls_ == cls_) || other.cutoff_ != cutoff_)
    throw TableError("cannot merge tables of different classes or cutoffs");
  total_ += other.total_;
  halted_ += other.halted_;
  for (const auto& [key, n] : other.counts_) counts_[key] += n;
}

std::uint64_t default_cutoff(const MachineClass& cls) { return cls.dim == Dim::One ? 107 : 200; }

CtmTable build_table_range(const MachineClass& cls, std::uint64_t cutoff, std::uint64_t lo, std::uint64_t hi) {
  if (cutoff < 1) throw UsageError("cutoff must be at least 1");
  const std::uint64_t size = class_size(cls);
  if (lo > hi || hi > size) throw UsageError("machine index range out of bounds");
  if (cls.entries() > FlatMachine::kMaxEntries || cls.states > 127) throw CapacityError("machine class too large");

  CtmTable table(cls, cutoff);
  if (lo == hi) return table;

  const std::uint64_t base = cls.entry_choices();
  const int entries = cls.entries();

  // Odometer over entry codes, last entry least significant.
  std::vector<std::uint64_t> digits(entries);
  {
    std::uint64_t idx = lo;
    for (int e = entries - 1; e >= 0; --e) {
      digits[e] = idx % base;
      idx /= base;
    }
  }
  FlatMachine flat;
  flat.entries = entries;
  int halting_entries = 0;
  for (int e = 0; e < entries; ++e) {
    const Transition t = decode_transition(cls, digits[e]);
    flat.set(e, t);
    halting_entries += t.halts();
  }

  std::unordered_map<std::string, std::uint64_t> histogram;
  histogram.reserve(1 << 12);
  std::uint64_t halted_machines = 0;

  std::optional<Tape1D> tape1;
  std::optional<Tape2D> tape2;
  if (cls.dim == Dim::One) tape1.emplace(cutoff);
  else tape2.emplace(cutoff);

  for (std::uint64_t i = lo; i < hi; ++i) {
    // Machines that never halt: no halting entry at all, or the start entry
    // loops on state 0 and keeps walking onto fresh blank cells.
    const bool never_halts = halting_entries == 0 || flat.next[0] == 0;
    if (!never_halts) {
      bool halted = false;
      if (tape1) {
        tape1->run(flat, cutoff, 0, halted);
        if (halted) {
          std::string out = tape1->output();
          std::string comp = complement_cells(out);
          ++histogram[std::move(out)];
          ++histogram[std::move(comp)];
          ++halted_machines;
        }
        tape1->clear();
      } else {
        tape2->run(flat, cutoff, 0, halted);
        if (halted) {
          std::string out = tape2->output();
          std::string comp = complement_key(out);
          ++histogram[std::move(out)];
          ++histogram[std::move(comp)];
          ++halted_machines;
        }
        tape2->clear();
      }
    }
    // advance odometer
    for (int e = entries - 1; e >= 0; --e) {
      halting_entries -= flat.next[e] < 0;
      if (++digits[e] == base) {
        digits[e] = 0;
        const Transition t = decode_transition(cls, 0);
        flat.set(e, t);
        halting_entries += t.halts();
        continue;
      }
      const Transition t = decode_transition(cls, digits[e]);
      flat.set(e, t);
      halting_entries += t.halts();
      break;
    }
  }

  table.add_runs(2 * (hi - lo), 2 * halted_machines);
  for (auto& [key, n] : histogram) table.add_count(key, n);
  return table;
}

CtmTable build_table(const MachineClass& cls, std::uint64_t cutoff, unsigned workers) {
  const std::uint64_t size = class_size(cls);
  if (workers == 0) workers = 1;
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, std::max<std::uint64_t>(size, 1)));
  std::vector<CtmTable> parts(workers);
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t lo = size / workers * w + std::min<std::uint64_t>(w, size % workers);
    const std::uint64_t hi = lo + size / workers + (w < size % workers ? 1 : 0);
    pool.emplace_back([&, w, lo, hi] {
      try {
        parts[w] = build_table_range(cls, cutoff, lo, hi);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  CtmTable table(cls, cutoff);
  for (const auto& p : parts) table.merge(p);
  return table;
}

std::string table_checksum(const CtmTable& t) {
  uLong crc = crc32(0L, Z_NULL, 0);
  for (const auto& [key, n] : t.counts()) {
    const std::string row = key + " " + std::to_string(n) + "\n";
    crc = crc32(crc, reinterpret_cast<const Bytef*>(row.data()), static_cast<uInt>(row.size()));
  }
  char buf[16];
  std::snprintf(buf, sizeof buf, "%08lx", static_cast<unsigned long>(crc));
  return buf;
}

void save_table(const CtmTable& t, std::ostream& out) {
  const auto& cls = t.machine_class();
  out << "#class " << cls.states << ' ' << cls.symbols << ' ' << static_cast<int>(cls.dim) << '\n';
  out << "#cutoff " << t.cutoff() << '\n';
  out << "#total " << t.total_runs() << '\n';
  out << "#halted " << t.halted_runs() << '\n';
  out << "#provenance " << (t.external() ? "external" : "built") << '\n';
  out << "#checksum " << table_checksum(t) << '\n';
  for (const auto& [key, n] : t.counts()) out << key << ' ' << n << '\n';
  if (!out) throw TableError("failed to write table");
}

CtmTable load_table(std::istream& in) {
  std::optional<MachineClass> cls;
  std::optional<std::uint64_t> cutoff, total, halted;
  std::optional<std::string> checksum;
  bool external = true;
  std::map<std::string, std::uint64_t> rows;

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fail = [&](const std::string& what) {
      return TableError("table line " + std::to_string(lineno) + ": " + what);
    };
    std::istringstream ls(line);
    if (line[0] == '#') {
      std::string tag;
      ls >> tag;
      if (tag == "#class") {
        int n = 0, k = 0, d = 0;
        if (!(ls >> n >> k >> d) || n < 1 || k != 2 || (d != 1 && d != 2)) throw fail("malformed #class");
        cls = MachineClass{n, k, static_cast<Dim>(d)};
      } else if (tag == "#cutoff" || tag == "#total" || tag == "#halted") {
        std::string v;
        std::uint64_t value = 0;
        if (!(ls >> v) || !parse_u64(v, value)) throw fail("malformed " + tag);
        (tag == "#cutoff" ? cutoff : tag == "#total" ? total : halted) = value;
      } else if (tag == "#checksum") {
        std::string v;
        if (!(ls >> v)) throw fail("malformed #checksum");
        checksum = v;
      } else if (tag == "#provenance") {
        std::string v;
        if (!(ls >> v) || (v != "built" && v != "external")) throw fail("malformed #provenance");
        external = v == "external";
      } else {
        throw fail("unknown header " + tag);
      }
      continue;
    }
    if (!cls) throw fail("row before #class header");
    std::string key, count_text, extra;
    std::uint64_t count = 0;
    if (!(ls >> key >> count_text) || (ls >> extra) || !parse_u64(count_text, count) || count == 0)
      throw fail("malformed row");
    parse_key(key, cls->dim);
    if (!rows.emplace(key, count).second) throw fail("duplicate key " + key);
  }
  if (!cls || !cutoff || !total || !halted || !checksum) throw TableError("table header incomplete");

  CtmTable t(*cls, *cutoff);
  std::uint64_t sum = 0;
  for (const auto& [key, n] : rows) {
    t.add_count(key, n);
    sum += n;
  }
  if (sum != *halted) throw TableError("row counts do not sum to #halted");
  if (*halted > *total) throw TableError("#halted exceeds #total");
  t.add_runs(*total, *halted);
  t.set_external(external);
  if (table_checksum(t) != *checksum) throw TableError("checksum mismatch");
  return t;
}

void save_table_file(const CtmTable& t, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw TableError("cannot open " + path + " for writing");
  save_table(t, out);
}

CtmTable load_table_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw TableError("cannot open table " + path);
  return load_table(in);
}

}  // namespace algodecon::ctm
