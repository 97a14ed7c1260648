#include "nutrilp/data_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <nlohmann/json.hpp>
#include <optional>
#include <set>
#include <sstream>

#include "nutrilp/error.hpp"

namespace nutrilp::io {

namespace {

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

std::optional<double> parse_number(const std::string& cell) {
    const std::string t = trim(cell);
    if (t.empty()) return std::nullopt;
    double v = 0.0;
    const char* first = t.data();
    if (*first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size()) return std::nullopt;
    return v;
}

std::string where(std::size_t row, const std::string& column) {
    return "row " + std::to_string(row) + ", column '" + column + "'";
}

double require_number(const std::string& cell, std::size_t row, const std::string& column) {
    const auto v = parse_number(cell);
    if (!v) throw InputError(where(row, column) + ": '" + cell + "' is not a number");
    return *v;
}

class Header {
public:
    explicit Header(const std::vector<std::string>& names) {
        for (std::size_t i = 0; i < names.size(); ++i) {
            const auto name = trim(names[i]);
            if (!index_.emplace(name, i).second) throw InputError("duplicate column '" + name + "'");
            names_.push_back(name);
        }
    }
    std::optional<std::size_t> find(const std::string& name) const {
        const auto it = index_.find(name);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }
    std::size_t require(const std::string& name) const {
        const auto i = find(name);
        if (!i) throw InputError("missing mandatory column '" + name + "'");
        return *i;
    }
    const std::vector<std::string>& names() const { return names_; }

private:
    std::map<std::string, std::size_t> index_;
    std::vector<std::string> names_;
};

std::ifstream open(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path.string() + "'");
    return in;
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

CsvDocument parse_csv(std::istream& in) {
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (text.rfind("\xEF\xBB\xBF", 0) == 0) text.erase(0, 3);

    CsvDocument doc;
    std::size_t pos = 0;
    // Metadata and blank lines before the header.
    while (pos < text.size()) {
        const std::size_t eol = text.find('\n', pos);
        const std::string line = trim(text.substr(pos, eol == std::string::npos ? std::string::npos : eol - pos));
        if (!line.empty() && line[0] != '#') break;
        if (!line.empty()) {
            const auto colon = line.find(':');
            if (colon != std::string::npos)
                doc.metadata[trim(line.substr(1, colon - 1))] = trim(line.substr(colon + 1));
        }
        if (eol == std::string::npos) {
            pos = text.size();
            break;
        }
        pos = eol + 1;
    }

    std::vector<std::string> record;
    std::string field;
    bool quoted = false;
    bool field_started = false;
    const auto end_record = [&] {
        record.push_back(std::move(field));
        field.clear();
        const bool blank = record.size() == 1 && record[0].empty() && !field_started;
        if (!blank) doc.records.push_back(std::move(record));
        record.clear();
        field_started = false;
    };
    for (; pos < text.size(); ++pos) {
        const char c = text[pos];
        if (quoted) {
            if (c == '"') {
                if (pos + 1 < text.size() && text[pos + 1] == '"') {
                    field += '"';
                    ++pos;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
            continue;
        }
        switch (c) {
            case '"':
                quoted = true;
                field_started = true;
                break;
            case ',':
                record.push_back(std::move(field));
                field.clear();
                field_started = true;
                break;
            case '\r':
                break;
            case '\n':
                end_record();
                break;
            default:
                field += c;
                field_started = true;
        }
    }
    if (quoted) throw InputError("unterminated quoted field");
    if (field_started || !field.empty() || !record.empty()) end_record();
    return doc;
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

Dataset load_foods(std::istream& in, std::string id) {
    const auto doc = parse_csv(in);
    if (doc.records.empty()) throw InputError("foods table has no header row");

    Dataset ds;
    ds.id = std::move(id);
    if (const auto it = doc.metadata.find("source"); it != doc.metadata.end()) ds.source.description = it->second;
    if (const auto it = doc.metadata.find("date"); it != doc.metadata.end()) ds.source.date = it->second;
    if (const auto it = doc.metadata.find("currency"); it != doc.metadata.end()) ds.source.currency = it->second;

    const Header header(doc.records[0]);
    const auto c_id = header.require("id");
    const auto c_name = header.require("name");
    const auto c_group = header.require("group");
    const auto c_price = header.require("price_per_serving");
    const auto c_mass = header.require("serving_g");
    header.require(column_name(Nutrient::energy));
    const auto c_source = header.find("source_id");
    const auto c_free = header.find("calorie_free");

    std::vector<std::pair<std::size_t, Nutrient>> nutrient_cols;
    for (std::size_t i = 0; i < header.names().size(); ++i) {
        if (i == c_id || i == c_name || i == c_group || i == c_price || i == c_mass) continue;
        if ((c_source && i == *c_source) || (c_free && i == *c_free)) continue;
        const auto& name = header.names()[i];
        const auto n = parse_column_name(name);
        if (!n) throw InputError("unknown column '" + name + "' (expected <nutrient>_<unit>)");
        nutrient_cols.emplace_back(i, *n);
        ds.nutrient_columns.push_back(*n);
    }
    std::sort(ds.nutrient_columns.begin(), ds.nutrient_columns.end());

    std::set<std::string> seen;
    std::size_t blanks = 0;
    for (std::size_t r = 1; r < doc.records.size(); ++r) {
        const auto& rec = doc.records[r];
        const std::size_t row = r + 1;
        if (rec.size() != header.names().size())
            throw InputError("row " + std::to_string(row) + ": expected " + std::to_string(header.names().size()) +
                             " fields, found " + std::to_string(rec.size()));
        FoodItem::Fields f;
        f.id = trim(rec[c_id]);
        if (f.id.empty()) throw InputError(where(row, "id") + ": empty id");
        if (!seen.insert(f.id).second) throw InputError("row " + std::to_string(row) + ": duplicate id '" + f.id + "'");
        f.name = trim(rec[c_name]);
        const auto group = parse_food_group(trim(rec[c_group]));
        if (!group) throw InputError(where(row, "group") + ": unknown food group '" + rec[c_group] + "'");
        f.group = *group;
        f.price_per_serving = require_number(rec[c_price], row, "price_per_serving");
        f.serving_mass_g = require_number(rec[c_mass], row, "serving_g");
        if (c_source) {
            const auto s = trim(rec[*c_source]);
            if (!s.empty()) f.source_id = s;
        }
        if (c_free) {
            const auto s = lower(trim(rec[*c_free]));
            if (s == "1" || s == "true" || s == "yes") f.calorie_free = true;
            else if (!s.empty() && s != "0" && s != "false" && s != "no")
                throw InputError(where(row, "calorie_free") + ": expected 0/1");
        }
        for (const auto& [col, n] : nutrient_cols) {
            const auto& cell = rec[col];
            if (trim(cell).empty()) {
                ++blanks;
                f.composition[n] = 0.0;
                continue;
            }
            f.composition[n] = require_number(cell, row, header.names()[col]);
        }
        try {
            ds.foods.emplace_back(std::move(f));
        } catch (const InputError& e) {
            throw InputError("row " + std::to_string(row) + ": " + e.what());
        }
    }
    if (ds.foods.empty()) ds.warnings.push_back("foods table has no rows");
    if (blanks > 0) ds.warnings.push_back(std::to_string(blanks) + " blank nutrient cell(s) read as 0");
    return ds;
}

Dataset load_foods(const std::filesystem::path& path) {
    auto in = open(path);
    try {
        return load_foods(in, path.stem().string());
    } catch (const InputError& e) {
        throw InputError(path.filename().string() + ": " + e.what());
    }
}

void save_foods(const Dataset& ds, std::ostream& out) {
    if (!ds.source.description.empty()) out << "# source: " << ds.source.description << "\n";
    if (!ds.source.date.empty()) out << "# date: " << ds.source.date << "\n";
    out << "# currency: " << ds.source.currency << "\n";

    const bool any_source = std::any_of(ds.foods.begin(), ds.foods.end(), [](const FoodItem& f) { return f.source_id().has_value(); });
    const bool any_free = std::any_of(ds.foods.begin(), ds.foods.end(), [](const FoodItem& f) { return f.calorie_free(); });
    std::vector<Nutrient> columns = ds.nutrient_columns;
    if (std::find(columns.begin(), columns.end(), Nutrient::energy) == columns.end()) columns.insert(columns.begin(), Nutrient::energy);

    out << "id,name,group,price_per_serving,serving_g";
    if (any_source) out << ",source_id";
    if (any_free) out << ",calorie_free";
    for (auto n : columns) out << "," << column_name(n);
    out << "\n";
    for (const auto& f : ds.foods) {
        out << csv_escape(f.id()) << "," << csv_escape(f.name()) << "," << to_string(f.group()) << ","
            << format_double(f.price_per_serving()) << "," << format_double(f.serving_mass_g());
        if (any_source) out << "," << csv_escape(f.source_id().value_or(""));
        if (any_free) out << "," << (f.calorie_free() ? "1" : "0");
        for (auto n : columns) out << "," << format_double(f.amount(n));
        out << "\n";
    }
}

RequirementSet load_requirements(std::istream& in, std::string default_person) {
    const auto doc = parse_csv(in);
    if (doc.records.empty()) throw InputError("requirements table has no header row");
    const Header header(doc.records[0]);
    const auto c_nutrient = header.require("nutrient");
    const auto c_unit = header.require("unit");
    const auto c_kind = header.require("bound_kind");
    const auto c_value = header.require("value");
    const auto c_prov = header.require("provenance");

    std::string person = std::move(default_person);
    if (const auto it = doc.metadata.find("person"); it != doc.metadata.end()) person = it->second;

    std::optional<double> energy;
    std::vector<DriEntry> entries;
    for (std::size_t r = 1; r < doc.records.size(); ++r) {
        const auto& rec = doc.records[r];
        const std::size_t row = r + 1;
        if (rec.size() != header.names().size())
            throw InputError("row " + std::to_string(row) + ": expected " + std::to_string(header.names().size()) +
                             " fields, found " + std::to_string(rec.size()));
        const auto nutrient_id = trim(rec[c_nutrient]);
        const auto nutrient = parse_nutrient(nutrient_id);
        if (!nutrient) throw InputError(where(row, "nutrient") + ": unknown nutrient '" + nutrient_id + "'");
        const auto kind = parse_bound_kind(lower(trim(rec[c_kind])));
        if (!kind) throw InputError(where(row, "bound_kind") + ": expected lower, upper or equality");
        const double value = require_number(rec[c_value], row, "value");

        std::optional<Provenance> prov;
        const auto prov_token = lower(trim(rec[c_prov]));
        for (auto p : {Provenance::rda, Provenance::ai, Provenance::ul, Provenance::cdrr, Provenance::amdr_low,
                       Provenance::amdr_high, Provenance::eer, Provenance::custom})
            if (lower(std::string(to_string(p))) == prov_token) prov = p;
        if (!prov) throw InputError(where(row, "provenance") + ": unknown provenance '" + rec[c_prov] + "'");

        const auto unit = trim(rec[c_unit]);
        DriBasis basis;
        if (unit == to_string(info(*nutrient).unit)) basis = DriBasis::absolute;
        else if (unit == "g_per_1000kcal" && info(*nutrient).unit == Unit::g) basis = DriBasis::per_1000_kcal;
        else if (unit == "pct_energy") basis = DriBasis::percent_energy;
        else
            throw InputError(where(row, "unit") + ": " + nutrient_id + " is measured in " +
                             std::string(to_string(info(*nutrient).unit)) + ", not '" + unit + "'");

        if (*nutrient == Nutrient::energy) {
            if (*kind != BoundKind::equality || basis != DriBasis::absolute)
                throw InputError("row " + std::to_string(row) + ": energy must be an equality in kcal");
            if (energy) throw InputError("row " + std::to_string(row) + ": duplicate energy row");
            energy = value;
            continue;
        }
        entries.push_back({*nutrient, *kind, value, *prov, basis});
    }
    return build_requirement_set(std::move(person), energy, entries);
}

RequirementSet load_requirements(const std::filesystem::path& path) {
    auto in = open(path);
    try {
        return load_requirements(in, path.stem().string());
    } catch (const InputError& e) {
        throw InputError(path.filename().string() + ": " + e.what());
    }
}

DietPlan load_plan_csv(std::istream& in) {
    const auto doc = parse_csv(in);
    if (doc.records.empty()) throw InputError("plan table has no header row");
    const Header header(doc.records[0]);
    const auto c_id = header.require("id");
    const auto c_q = header.require("servings");
    DietPlan plan;
    for (std::size_t r = 1; r < doc.records.size(); ++r) {
        const auto& rec = doc.records[r];
        if (rec.size() != header.names().size())
            throw InputError("row " + std::to_string(r + 1) + ": wrong field count");
        plan.set(trim(rec[c_id]), require_number(rec[c_q], r + 1, "servings"));
    }
    return plan;
}

std::map<std::string, double> load_observed_csv(std::istream& in) {
    const auto doc = parse_csv(in);
    if (doc.records.empty()) throw InputError("observed table has no header row");
    const Header header(doc.records[0]);
    const auto c_id = header.require("id");
    const auto c_g = header.require("g_per_day");
    std::map<std::string, double> out;
    for (std::size_t r = 1; r < doc.records.size(); ++r) {
        const auto& rec = doc.records[r];
        if (rec.size() != header.names().size())
            throw InputError("row " + std::to_string(r + 1) + ": wrong field count");
        const double g = require_number(rec[c_g], r + 1, "g_per_day");
        if (g < 0.0) throw InputError(where(r + 1, "g_per_day") + ": must be >= 0");
        out[trim(rec[c_id])] = g;
    }
    return out;
}

std::string save_session(const Session& s) {
    nlohmann::json j;
    j["v"] = kSessionVersion;
    j["dataset"] = s.dataset;
    j["requirements"] = s.requirements;
    j["label"] = s.label;
    j["plan"] = nlohmann::json::object();
    for (const auto& [id, q] : s.plan.items()) j["plan"][id] = q;
    return j.dump(2) + "\n";
}

Session load_session(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(std::string("session is not valid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("v") || j["v"] != kSessionVersion)
        throw InputError("unsupported session version (expected \"v\": 1)");
    Session s;
    const auto text_field = [&j](const char* key) -> std::string {
        if (!j.contains(key)) return {};
        if (!j[key].is_string()) throw InputError(std::string("session field '") + key + "' must be a string");
        return j[key].get<std::string>();
    };
    s.dataset = text_field("dataset");
    s.requirements = text_field("requirements");
    s.label = text_field("label");
    if (j.contains("plan")) {
        if (!j["plan"].is_object()) throw InputError("session field 'plan' must be an object");
        for (const auto& [id, q] : j["plan"].items()) {
            if (!q.is_number()) throw InputError("servings of '" + id + "' must be a number");
            s.plan.set(id, q.get<double>());
        }
    }
    return s;
}

std::string read_file(const std::filesystem::path& path) {
    auto in = open(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

DietPlan load_plan_file(const std::filesystem::path& path) {
    if (path.extension() == ".json") return load_session(read_file(path)).plan;
    auto in = open(path);
    return load_plan_csv(in);
}

}  // namespace nutrilp::io
