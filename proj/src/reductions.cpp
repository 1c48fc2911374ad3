#include "equisched/reductions.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <sstream>

#include <json.hpp>

namespace equisched::reductions {

namespace {

Time checked_mul(Time a, Time b) {
    Time out = 0;
    if (__builtin_mul_overflow(a, b, &out) || out > kMaxTotalTime)
        throw ValidationError("construction constant overflows the representable range");
    return out;
}

Time checked_add(Time a, Time b) {
    Time out = 0;
    if (__builtin_add_overflow(a, b, &out) || out > kMaxTotalTime)
        throw ValidationError("construction constant overflows the representable range");
    return out;
}

std::vector<std::string> split_tokens(std::string_view text) {
    std::vector<std::string> tokens;
    std::istringstream in{std::string(text)};
    std::string token;
    while (in >> token) tokens.push_back(token);
    return tokens;
}

long long parse_int(const std::string &token, const std::string &what) {
    long long value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size())
        throw ValidationError(what + ": expected an integer, got '" + token + "'");
    return value;
}

std::string var_name(int v) { return "x" + std::to_string(v); }

}  // namespace

Time PartitionInput::half() const {
    Time sum = 0;
    for (Time s : items) sum = checked_add(sum, s);
    return sum / 2;
}

void PartitionInput::validate() const {
    if (items.empty()) throw ValidationError("partition input is empty");
    Time sum = 0;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (items[i] <= 0)
            throw ValidationError("partition element " + std::to_string(i + 1) + " is not positive: " +
                                  std::to_string(items[i]));
        sum = checked_add(sum, items[i]);
    }
    if (sum % 2 != 0) throw ValidationError("partition elements sum to " + std::to_string(sum) + ", which is odd");
}

void Sat34Formula::validate() const {
    if (num_vars < 1) throw ValidationError("formula has no variables");
    std::vector<int> occurrences(num_vars + 1, 0);
    for (std::size_t c = 0; c < clauses.size(); ++c) {
        const std::string where = "clause " + std::to_string(c + 1);
        for (int a = 0; a < 3; ++a) {
            const int lit = clauses[c][a];
            if (lit == 0 || std::abs(lit) > num_vars)
                throw ValidationError(where + ": literal " + std::to_string(lit) + " out of range");
            for (int b = 0; b < a; ++b)
                if (std::abs(clauses[c][b]) == std::abs(lit))
                    throw ValidationError(where + ": variable " + std::to_string(std::abs(lit)) + " repeated");
            ++occurrences[std::abs(lit)];
        }
    }
    for (int v = 1; v <= num_vars; ++v) {
        if (occurrences[v] != 4)
            throw ValidationError("variable " + std::to_string(v) + " occurs in " + std::to_string(occurrences[v]) +
                                  " clauses, expected 4");
    }
}

void BinPackingInput::validate(Time size_cap) const {
    if (bins < 2) throw ValidationError("bin packing needs b >= 2, got b=" + std::to_string(bins));
    if (capacity < 1) throw ValidationError("bin capacity must be positive");
    for (std::size_t j = 0; j < sizes.size(); ++j) {
        if (sizes[j] <= 0) throw ValidationError("item " + std::to_string(j + 1) + " has non-positive size");
        if (sizes[j] > size_cap)
            throw ValidationError("item " + std::to_string(j + 1) + " size " + std::to_string(sizes[j]) +
                                  " exceeds the unary size cap " + std::to_string(size_cap));
    }
}

std::string_view to_string(SourceKind kind) {
    switch (kind) {
        case SourceKind::partition: return "partition";
        case SourceKind::sat34: return "sat34";
        case SourceKind::bin_packing: return "binpack";
    }
    return "unknown";
}

std::string ReductionOutput::labels_json() const {
    nlohmann::ordered_json doc;
    doc["source"] = std::string(to_string(source));
    auto &clients = doc["clients"] = nlohmann::ordered_json::object();
    for (std::size_t j = 0; j < client_labels.size(); ++j) clients[client_labels[j]] = j + 1;
    auto &days = doc["days"] = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < day_labels.size(); ++i) days[day_labels[i]] = i + 1;
    return doc.dump(2) + "\n";
}

ReductionOutput reduce_sat34(const Sat34Formula &f, Time k) {
    f.validate();
    const int v = f.num_vars;
    const int c = static_cast<int>(f.clauses.size());
    const int n = 3 * v + c;
    const int m = 2 * v + 2 * c;
    TimeMatrix proc = TimeMatrix::Zero(m, n);
    std::vector<std::string> clients(n), days(m);

    auto var_client = [](int x) { return 3 * (x - 1); };  // x, then x^T, x^F
    auto var_day = [](int x) { return 2 * (x - 1); };     // x_1, then x_2
    for (int x = 1; x <= v; ++x) {
        const int cx = var_client(x), dx = var_day(x);
        clients[cx] = var_name(x);
        clients[cx + 1] = var_name(x) + "^T";
        clients[cx + 2] = var_name(x) + "^F";
        days[dx] = var_name(x) + "_1";
        days[dx + 1] = var_name(x) + "_2";
        proc(dx, cx) = 27;
        proc(dx + 1, cx) = 9;
        proc(dx + 1, cx + 1) = 1;
        proc(dx + 1, cx + 2) = 1;
    }
    for (int q = 0; q < c; ++q) {
        const int client = 3 * v + q;
        const int day = 2 * v + 2 * q;
        clients[client] = "c" + std::to_string(q + 1);
        days[day] = "c" + std::to_string(q + 1) + "_1";
        days[day + 1] = "c" + std::to_string(q + 1) + "_2";
        proc(day, client) = 29;
        proc(day + 1, client) = 6;
        for (int lit : f.clauses[q]) {
            const int x = std::abs(lit);
            proc(day + 1, var_client(x) + (lit > 0 ? 1 : 2)) = 1;
        }
    }
    return {Instance(std::move(proc), k), SourceKind::sat34, std::move(clients), std::move(days)};
}

ReductionOutput reduce_partition_days(const PartitionInput &p, int extra_zero_days) {
    p.validate();
    if (extra_zero_days < 0) throw ValidationError("extra day count must be non-negative");
    const Time b = p.half();
    const int n = static_cast<int>(p.items.size()) + 2;
    const int m = 4 + extra_zero_days;
    TimeMatrix proc = TimeMatrix::Zero(m, n);
    std::vector<std::string> clients{"x", "y"}, days;
    proc(0, 0) = checked_mul(2, b);
    proc(1, 0) = checked_mul(5, b);
    proc(2, 1) = checked_mul(2, b);
    proc(3, 1) = checked_mul(5, b);
    for (std::size_t j = 0; j < p.items.size(); ++j) {
        proc(1, 2 + j) = p.items[j];
        proc(3, 2 + j) = p.items[j];
        clients.push_back("s" + std::to_string(j + 1));
    }
    for (int i = 0; i < m; ++i) days.push_back(i < 4 ? "day" + std::to_string(i + 1) : "pad" + std::to_string(i - 3));
    return {Instance(std::move(proc), checked_mul(8, b)), SourceKind::partition, std::move(clients), std::move(days)};
}

ReductionOutput reduce_partition_clients(const PartitionInput &p, int extra_zero_clients) {
    p.validate();
    if (extra_zero_clients < 0) throw ValidationError("extra client count must be non-negative");
    const Time b = p.half();
    const int m = static_cast<int>(p.items.size());
    const int n = 2 + extra_zero_clients;
    TimeMatrix proc = TimeMatrix::Zero(m, n);
    std::vector<std::string> clients{"client1", "client2"}, days;
    for (int i = 0; i < m; ++i) {
        proc(i, 0) = proc(i, 1) = p.items[i];
        days.push_back("s" + std::to_string(i + 1));
    }
    for (int j = 0; j < extra_zero_clients; ++j) clients.push_back("pad" + std::to_string(j + 1));
    return {Instance(std::move(proc), checked_mul(3, b)), SourceKind::partition, std::move(clients), std::move(days)};
}

ReductionOutput reduce_bin_packing(const BinPackingInput &bp, Time size_cap) {
    bp.validate(size_cap);
    const Time b = bp.bins;
    const Time cap = bp.capacity;
    const Time b2 = checked_mul(b, b);
    const Time b3 = checked_mul(b2, b);
    const Time first_day = checked_mul(cap, b3 - b2 - b);
    const Time second_day = checked_mul(cap, b2);
    const Time k = checked_mul(cap, b3 - b + 1);

    const int bins = bp.bins;
    const int n = bins + static_cast<int>(bp.sizes.size());
    const int m = 2 * bins;
    TimeMatrix proc = TimeMatrix::Zero(m, n);
    std::vector<std::string> clients, days;
    for (int x = 0; x < bins; ++x) {
        proc(2 * x, x) = first_day;
        proc(2 * x + 1, x) = second_day;
        clients.push_back("bin" + std::to_string(x + 1));
        days.push_back("bin" + std::to_string(x + 1) + "_1");
        days.push_back("bin" + std::to_string(x + 1) + "_2");
    }
    for (std::size_t j = 0; j < bp.sizes.size(); ++j) {
        for (int x = 0; x < bins; ++x) proc(2 * x + 1, bins + j) = bp.sizes[j];
        clients.push_back("item" + std::to_string(j + 1));
    }
    return {Instance(std::move(proc), k), SourceKind::bin_packing, std::move(clients), std::move(days)};
}

bool solve_partition(const PartitionInput &p, std::uint64_t guard) {
    p.validate();
    const std::size_t count = p.items.size();
    if (count >= 63 || (std::uint64_t{1} << count) > guard)
        throw GuardExceeded("partition source search over 2^" + std::to_string(count) + " subsets exceeds guard");
    const Time b = p.half();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << count); ++mask) {
        Time sum = 0;
        for (std::size_t j = 0; j < count; ++j)
            if (mask >> j & 1) sum += p.items[j];
        if (sum == b) return true;
    }
    return false;
}

bool solve_sat34(const Sat34Formula &f, std::uint64_t guard) {
    f.validate();
    if (f.num_vars >= 63 || (std::uint64_t{1} << f.num_vars) > guard)
        throw GuardExceeded("sat source search over 2^" + std::to_string(f.num_vars) + " assignments exceeds guard");
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << f.num_vars); ++mask) {
        bool all = true;
        for (const auto &clause : f.clauses) {
            bool sat = false;
            for (int lit : clause) sat |= (((mask >> (std::abs(lit) - 1)) & 1) == 1) == (lit > 0);
            if (!sat) {
                all = false;
                break;
            }
        }
        if (all) return true;
    }
    return false;
}

bool solve_bin_packing(const BinPackingInput &bp, std::uint64_t guard) {
    bp.validate();
    const std::size_t items = bp.sizes.size();
    double candidates = std::pow(static_cast<double>(bp.bins), static_cast<double>(items));
    if (candidates > static_cast<double>(guard))
        throw GuardExceeded("bin packing source search exceeds guard");
    std::vector<int> bin_of(items, 0);
    std::vector<Time> load(bp.bins, 0);
    while (true) {
        std::fill(load.begin(), load.end(), 0);
        bool ok = true;
        for (std::size_t j = 0; j < items && ok; ++j) ok = (load[bin_of[j]] += bp.sizes[j]) <= bp.capacity;
        if (ok) return true;
        std::size_t j = 0;
        while (j < items && ++bin_of[j] == bp.bins) bin_of[j++] = 0;
        if (j == items) return false;
    }
}

bool solve_source(const SourceInput &input, std::uint64_t guard) {
    return std::visit(
        [guard](const auto &src) -> bool {
            using T = std::decay_t<decltype(src)>;
            if constexpr (std::is_same_v<T, PartitionInput>) return solve_partition(src, guard);
            else if constexpr (std::is_same_v<T, Sat34Formula>) return solve_sat34(src, guard);
            else return solve_bin_packing(src, guard);
        },
        input);
}

PartitionInput parse_partition(std::string_view text) {
    PartitionInput p;
    const auto tokens = split_tokens(text);
    for (std::size_t i = 0; i < tokens.size(); ++i) p.items.push_back(parse_int(tokens[i], "element " + std::to_string(i + 1)));
    p.validate();
    return p;
}

BinPackingInput parse_binpacking(std::string_view text) {
    const auto tokens = split_tokens(text);
    if (tokens.size() < 2) throw ValidationError("bin packing input needs a header line \"b B\"");
    BinPackingInput bp;
    const long long bins = parse_int(tokens[0], "b");
    if (bins < 0 || bins > 1'000'000) throw ValidationError("b out of range: " + tokens[0]);
    bp.bins = static_cast<int>(bins);
    bp.capacity = parse_int(tokens[1], "B");
    for (std::size_t i = 2; i < tokens.size(); ++i)
        bp.sizes.push_back(parse_int(tokens[i], "item " + std::to_string(i - 1)));
    bp.validate();
    return bp;
}

Sat34Formula parse_sat34(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    bool have_header = false;
    long long declared_vars = 0, declared_clauses = 0;
    std::vector<std::vector<int>> clauses;
    std::vector<int> current;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto tokens = split_tokens(line);
        if (tokens.empty() || tokens[0][0] == 'c' || tokens[0][0] == '%') continue;
        if (tokens[0] == "p") {
            if (have_header) throw ValidationError("line " + std::to_string(line_no) + ": duplicate header");
            if (tokens.size() != 4 || tokens[1] != "cnf")
                throw ValidationError("line " + std::to_string(line_no) + ": expected \"p cnf <vars> <clauses>\"");
            declared_vars = parse_int(tokens[2], "header variable count");
            declared_clauses = parse_int(tokens[3], "header clause count");
            if (declared_vars < 1 || declared_vars > 1'000'000 || declared_clauses < 0)
                throw ValidationError("line " + std::to_string(line_no) + ": header counts out of range");
            have_header = true;
            continue;
        }
        if (!have_header) throw ValidationError("line " + std::to_string(line_no) + ": clause before \"p cnf\" header");
        for (const std::string &token : tokens) {
            const long long lit = parse_int(token, "line " + std::to_string(line_no));
            if (lit == 0) {
                clauses.push_back(std::move(current));
                current.clear();
            } else {
                if (std::llabs(lit) > declared_vars)
                    throw ValidationError("clause " + std::to_string(clauses.size() + 1) + ": literal " + token +
                                          " exceeds variable count " + std::to_string(declared_vars));
                current.push_back(static_cast<int>(lit));
            }
        }
    }
    if (!have_header) throw ValidationError("missing \"p cnf\" header");
    if (!current.empty()) throw ValidationError("last clause is not terminated by 0");
    if (static_cast<long long>(clauses.size()) != declared_clauses)
        throw ValidationError("header declares " + std::to_string(declared_clauses) + " clauses, found " +
                              std::to_string(clauses.size()));

    Sat34Formula f;
    f.num_vars = static_cast<int>(declared_vars);
    for (std::size_t c = 0; c < clauses.size(); ++c) {
        if (clauses[c].size() != 3)
            throw ValidationError("clause " + std::to_string(c + 1) + ": expected 3 literals, got " +
                                  std::to_string(clauses[c].size()));
        f.clauses.push_back({clauses[c][0], clauses[c][1], clauses[c][2]});
    }
    f.validate();
    return f;
}

}  // namespace equisched::reductions
