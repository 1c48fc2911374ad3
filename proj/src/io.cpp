#include "equisched/io.hpp"

#include <limits>

#include <json.hpp>

namespace equisched {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string &path, const std::string &what) {
    throw ValidationError(path + ": " + what);
}

json parse_json(std::string_view text) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error &e) {
        throw ValidationError(std::string("malformed JSON: ") + e.what());
    }
}

const json &member(const json &obj, const char *key) {
    const auto it = obj.find(key);
    if (it == obj.end()) fail("/" + std::string(key), "missing required field");
    return *it;
}

Time read_integer(const json &value, const std::string &path) {
    if (!value.is_number_integer()) fail(path, "expected an integer");
    if (value.is_number_unsigned() && value.get<std::uint64_t>() > static_cast<std::uint64_t>(kMaxTotalTime)) {
        fail(path, "integer out of range");
    }
    const Time v = value.get<Time>();
    if (v > kMaxTotalTime || v < -kMaxTotalTime) fail(path, "integer out of range");
    return v;
}

Time read_non_negative(const json &value, const std::string &path) {
    const Time v = read_integer(value, path);
    if (v < 0) fail(path, "expected a non-negative integer, got " + std::to_string(v));
    return v;
}

}  // namespace

Instance parse_instance(std::string_view text) {
    const json doc = parse_json(text);
    if (!doc.is_object()) fail("", "instance must be a JSON object");

    const Time clients = read_non_negative(member(doc, "clients"), "/clients");
    const Time days = read_non_negative(member(doc, "days"), "/days");
    if (clients < 1) fail("/clients", "need at least one client");
    if (days < 1) fail("/days", "need at least one day");

    std::optional<Time> k;
    if (const auto it = doc.find("k"); it != doc.end() && !it->is_null()) k = read_non_negative(*it, "/k");

    const json &rows = member(doc, "p");
    if (!rows.is_array()) fail("/p", "expected an array of rows");
    if (static_cast<Time>(rows.size()) != days) {
        fail("/p", "has " + std::to_string(rows.size()) + " rows, expected " + std::to_string(days));
    }
    TimeMatrix proc(days, clients);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const std::string row_path = "/p/" + std::to_string(i);
        const json &row = rows[i];
        if (!row.is_array()) fail(row_path, "expected an array");
        if (static_cast<Time>(row.size()) != clients) {
            fail(row_path, "row " + std::to_string(i) + " has " + std::to_string(row.size()) +
                               " entries, expected " + std::to_string(clients));
        }
        for (std::size_t j = 0; j < row.size(); ++j) {
            proc(i, j) = read_non_negative(row[j], row_path + "/" + std::to_string(j));
        }
    }
    return Instance(std::move(proc), k);
}

std::string serialize_instance(const Instance &inst) {
    json doc;
    doc["clients"] = inst.num_clients();
    doc["days"] = inst.num_days();
    if (inst.k()) doc["k"] = *inst.k();
    json rows = json::array();
    for (int i = 0; i < inst.num_days(); ++i) {
        json row = json::array();
        for (int j = 0; j < inst.num_clients(); ++j) row.push_back(inst.p(i, j));
        rows.push_back(std::move(row));
    }
    doc["p"] = std::move(rows);
    return doc.dump() + "\n";
}

Solution make_solution(const Instance &inst, bool feasible, Time k, const std::optional<ScheduleSet> &witness) {
    Solution sol;
    sol.feasible = feasible;
    sol.k = k;
    if (witness) {
        const CompletionReport report = evaluate(inst, *witness);
        sol.schedules = witness;
        sol.per_client_total.assign(report.per_client.begin(), report.per_client.end());
        sol.max_total = report.max_total;
    }
    return sol;
}

Solution parse_solution(std::string_view text) {
    const json doc = parse_json(text);
    if (!doc.is_object()) fail("", "solution must be a JSON object");

    Solution sol;
    const json &feasible = member(doc, "feasible");
    if (!feasible.is_boolean()) fail("/feasible", "expected a boolean");
    sol.feasible = feasible.get<bool>();
    sol.k = read_non_negative(member(doc, "k"), "/k");

    if (const auto it = doc.find("schedules"); it != doc.end() && !it->empty()) {
        if (!it->is_array()) fail("/schedules", "expected an array");
        ScheduleSet sched;
        for (std::size_t i = 0; i < it->size(); ++i) {
            const std::string day_path = "/schedules/" + std::to_string(i);
            const json &day = (*it)[i];
            if (!day.is_array()) fail(day_path, "expected an array");
            Permutation perm;
            for (std::size_t pos = 0; pos < day.size(); ++pos) {
                const Time client = read_integer(day[pos], day_path + "/" + std::to_string(pos));
                if (client < 1 || client > std::numeric_limits<int>::max()) {
                    fail(day_path + "/" + std::to_string(pos),
                         "day " + std::to_string(i + 1) + ": client index " + std::to_string(client) + " out of range");
                }
                perm.push_back(static_cast<int>(client - 1));
            }
            sched.days.push_back(std::move(perm));
        }
        sol.schedules = std::move(sched);
    }
    if (const auto it = doc.find("per_client_total"); it != doc.end() && it->is_array()) {
        for (std::size_t j = 0; j < it->size(); ++j) {
            sol.per_client_total.push_back(read_integer((*it)[j], "/per_client_total/" + std::to_string(j)));
        }
    }
    if (const auto it = doc.find("max_total"); it != doc.end() && !it->is_null()) {
        sol.max_total = read_integer(*it, "/max_total");
    }
    return sol;
}

std::string serialize_solution(const Solution &sol) {
    json doc;
    doc["feasible"] = sol.feasible;
    doc["k"] = sol.k;
    json schedules = json::array();
    if (sol.schedules) {
        for (const Permutation &perm : sol.schedules->days) {
            json day = json::array();
            for (int client : perm) day.push_back(client + 1);
            schedules.push_back(std::move(day));
        }
    }
    doc["schedules"] = std::move(schedules);
    doc["per_client_total"] = sol.per_client_total;
    doc["max_total"] = sol.max_total ? json(*sol.max_total) : json(nullptr);
    return doc.dump() + "\n";
}

}  // namespace equisched
