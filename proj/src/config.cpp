#include "eventpovm/config.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace eventpovm {

namespace {

struct ConfigValue {
    enum class Kind { String, Number, Boolean, Array };
    Kind kind = Kind::Number;
    std::string str;
    Real num = 0;
    bool flag = false;
    std::vector<ConfigValue> items;
};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void fail_at(const std::string& origin, int line, const std::string& what) {
    throw std::runtime_error(origin + ":" + std::to_string(line) + ": " + what);
}

ConfigValue parse_scalar(const std::string& text, const std::string& origin, int line) {
    ConfigValue v;
    if (text.empty()) fail_at(origin, line, "missing value");
    if (text.front() == '"') {
        if (text.size() < 2 || text.back() != '"')
            fail_at(origin, line, "unterminated string value");
        v.kind = ConfigValue::Kind::String;
        v.str = text.substr(1, text.size() - 2);
        return v;
    }
    if (text == "true" || text == "false") {
        v.kind = ConfigValue::Kind::Boolean;
        v.flag = text == "true";
        return v;
    }
    try {
        std::size_t used = 0;
        v.num = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
    } catch (const std::exception&) {
        fail_at(origin, line, "cannot parse value '" + text + "'");
    }
    v.kind = ConfigValue::Kind::Number;
    return v;
}

ConfigValue parse_value(const std::string& text, const std::string& origin, int line) {
    if (!text.empty() && text.front() == '[') {
        if (text.back() != ']') fail_at(origin, line, "unterminated array value");
        ConfigValue v;
        v.kind = ConfigValue::Kind::Array;
        const std::string body = trim(text.substr(1, text.size() - 2));
        if (body.empty()) return v;
        std::size_t start = 0;
        bool in_string = false;
        for (std::size_t i = 0; i <= body.size(); ++i) {
            if (i < body.size() && body[i] == '"') in_string = !in_string;
            if (i == body.size() || (body[i] == ',' && !in_string)) {
                const std::string item = trim(body.substr(start, i - start));
                if (item.empty()) fail_at(origin, line, "empty array element");
                v.items.push_back(parse_scalar(item, origin, line));
                start = i + 1;
            }
        }
        if (in_string) fail_at(origin, line, "unterminated string value");
        return v;
    }
    return parse_scalar(text, origin, line);
}

class Reader {
  public:
    Reader(const ConfigValue& v, const std::string& origin, int line, const std::string& key)
        : v_(v), origin_(origin), line_(line), key_(key) {}

    Real number() const {
        if (v_.kind != ConfigValue::Kind::Number)
            fail_at(origin_, line_, "key '" + key_ + "' needs a number");
        return v_.num;
    }
    int integer() const {
        const Real x = number();
        if (std::floor(x) != x || std::abs(x) > 1e9)
            fail_at(origin_, line_, "key '" + key_ + "' needs an integer");
        return static_cast<int>(x);
    }
    bool boolean() const {
        if (v_.kind != ConfigValue::Kind::Boolean)
            fail_at(origin_, line_, "key '" + key_ + "' needs true or false");
        return v_.flag;
    }
    std::string string() const {
        if (v_.kind != ConfigValue::Kind::String)
            fail_at(origin_, line_, "key '" + key_ + "' needs a quoted string");
        return v_.str;
    }
    template <std::size_t N>
    std::array<Real, N> number_array() const {
        if (v_.kind != ConfigValue::Kind::Array || v_.items.size() != N)
            fail_at(origin_, line_,
                    "key '" + key_ + "' needs an array of " + std::to_string(N) + " numbers");
        std::array<Real, N> out{};
        for (std::size_t i = 0; i < N; ++i) {
            if (v_.items[i].kind != ConfigValue::Kind::Number)
                fail_at(origin_, line_, "key '" + key_ + "' needs numeric elements");
            out[i] = v_.items[i].num;
        }
        return out;
    }
    std::vector<int> integer_list() const {
        if (v_.kind != ConfigValue::Kind::Array)
            fail_at(origin_, line_, "key '" + key_ + "' needs an array");
        std::vector<int> out;
        for (const auto& item : v_.items) {
            Reader r(item, origin_, line_, key_);
            out.push_back(r.integer());
        }
        return out;
    }
    std::vector<std::string> string_list() const {
        if (v_.kind != ConfigValue::Kind::Array)
            fail_at(origin_, line_, "key '" + key_ + "' needs an array");
        std::vector<std::string> out;
        for (const auto& item : v_.items) {
            if (item.kind != ConfigValue::Kind::String)
                fail_at(origin_, line_, "key '" + key_ + "' needs string elements");
            out.push_back(item.str);
        }
        return out;
    }

  private:
    const ConfigValue& v_;
    const std::string& origin_;
    int line_;
    const std::string& key_;
};

bool contains(const std::vector<std::string>& list, const std::string& s) {
    for (const auto& item : list)
        if (item == s) return true;
    return false;
}

std::string format_real(Real x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void validate(const RunConfig& c, bool saw_kmin, bool saw_kmax) {
    std::vector<std::string> problems;
    auto flag = [&](const std::string& p) { problems.push_back(p); };

    if (c.schema_version != 1) flag("schema_version must be 1");

    static const std::vector<std::string> known_tasks = {
        "variances", "inequalities", "density", "limit_study", "algebra_checks"};
    if (c.tasks.empty()) flag("tasks must not be empty");
    for (std::size_t i = 0; i < c.tasks.size(); ++i) {
        if (!contains(known_tasks, c.tasks[i])) flag("unknown task '" + c.tasks[i] + "'");
        for (std::size_t k = 0; k < i; ++k)
            if (c.tasks[k] == c.tasks[i]) flag("duplicate task '" + c.tasks[i] + "'");
    }

    const auto& w = c.wavefunction;
    const bool scalar_family = w.family == "gaussian_scalar";
    if (w.family == "gaussian_scalar" || w.family == "single_j_gaussian") {
        for (int a = 0; a < 4; ++a)
            if (!(w.width[a] > 0.0)) flag("wavefunction width must be positive");
    }
    if (w.family == "single_j_gaussian") {
        const Real two_j = 2.0 * w.j;
        const Real two_m = 2.0 * w.m;
        if (std::floor(two_j) != two_j || w.j < 0) flag("j must be a non-negative half-integer");
        if (std::floor(two_m) != two_m) flag("m must be a half-integer");
        if (std::floor(two_j) == two_j && std::floor(two_m) == two_m) {
            const int tj = static_cast<int>(two_j);
            const int tm = static_cast<int>(two_m);
            if (std::abs(tm) > tj) flag("m must satisfy |m| <= j");
            if ((tj - tm) % 2 != 0) flag("m must differ from j by an integer");
        }
        if (w.poly_degree < 0 || w.poly_degree > 6)
            flag("poly_degree must lie in [0, 6]");
    } else if (w.family == "model_section3") {
        if (std::floor(w.j) != w.j || w.j < 1) flag("model j must be an integer >= 1");
        if (!(w.g_width[0] > 0.0) || !(w.g_width[1] > 0.0))
            flag("model g_width must be positive");
        if (!(w.g_center[0] - 7.0 * w.g_width[0] > 0.0))
            flag("model profile support reaches k0 <= 0");
        if (!c.grid.auto_box) flag("model family sizes its own grid box");
    } else if (!scalar_family) {
        flag("unknown wavefunction family '" + w.family + "'");
    }

    if (c.povm.name != "identity_quasi_baricentric" && c.povm.name != "rotated_identity")
        flag("unknown povm name '" + c.povm.name + "'");
    if (c.povm.window != std::array<Real, 2>{0.0, 0.0}) {
        if (!(c.povm.window[0] >= 0.0) || !(c.povm.window[1] > c.povm.window[0]))
            flag("povm window needs 0 <= lower < upper");
    }

    if (saw_kmin != saw_kmax) flag("grid box needs both kmin and kmax");
    if (!c.grid.auto_box) {
        for (int a = 0; a < 4; ++a)
            if (!(c.grid.kmax[a] > c.grid.kmin[a])) flag("grid box is empty along an axis");
        if (c.grid.kmin[0] < 0.0) flag("box exits future cone");
    }
    if (c.grid.points_per_axis < 2) flag("grid points_per_axis must be at least 2");
    if (!(c.grid.leak_tol >= 0.0) || !(c.grid.leak_tol < 0.5))
        flag("grid leak_tol must lie in [0, 0.5)");

    if (contains(c.tasks, "density") && !scalar_family)
        flag("density task needs the gaussian_scalar family");
    if (c.density.points_per_axis < 2) flag("density points_per_axis must be at least 2");
    if (!(c.density.span > 0.0)) flag("density span must be positive");

    if (c.limit_study.j_list.empty()) flag("limit_study j_list must not be empty");
    for (std::size_t i = 0; i < c.limit_study.j_list.size(); ++i) {
        if (c.limit_study.j_list[i] < 1) flag("limit_study spins must satisfy j >= 1");
        if (i > 0 && c.limit_study.j_list[i] <= c.limit_study.j_list[i - 1])
            flag("limit_study j_list must increase strictly");
    }
    if (c.limit_study.points_per_axis < 8)
        flag("limit_study points_per_axis must be at least 8");
    if (!(c.limit_study.leak_tol >= 0.0) || !(c.limit_study.leak_tol < 0.5))
        flag("limit_study leak_tol must lie in [0, 0.5)");
    if (!(c.limit_study.mass_floor >= 0.0) || !(c.limit_study.mass_floor < 1.0))
        flag("limit_study mass_floor must lie in [0, 1)");

    if (c.algebra_checks.two_j_max < 0 || c.algebra_checks.two_j_max > 16)
        flag("algebra two_j_max must lie in [0, 16]");
    if (c.algebra_checks.samples < 1) flag("algebra samples must be at least 1");

    if (c.output.formats.empty()) flag("output formats must not be empty");
    for (std::size_t i = 0; i < c.output.formats.size(); ++i) {
        const std::string& f = c.output.formats[i];
        if (f != "json" && f != "csv" && f != "binary") flag("unknown output format '" + f + "'");
        for (std::size_t k = 0; k < i; ++k)
            if (c.output.formats[k] == f) flag("duplicate output format '" + f + "'");
    }

    if (!(c.tolerances.norm_tol > 0.0)) flag("norm_tol must be positive");
    if (!(c.tolerances.face_tol > 0.0)) flag("face_tol must be positive");
    if (c.run.threads < 0) flag("threads must be non-negative");

    if (!problems.empty()) {
        std::string msg = "invalid config";
        for (const auto& p : problems) msg += "; " + p;
        throw std::runtime_error(msg);
    }
}

}  // namespace

RunConfig parse_config_text(const std::string& text, const std::string& origin) {
    RunConfig c;
    bool saw_kmin = false;
    bool saw_kmax = false;
    std::string section;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string s = raw;
        bool in_string = false;
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s[i] == '"') in_string = !in_string;
            if (s[i] == '#' && !in_string) {
                s = s.substr(0, i);
                break;
            }
        }
        s = trim(s);
        if (s.empty()) continue;

        if (s.front() == '[') {
            if (s.back() != ']') fail_at(origin, line, "unterminated section header");
            section = trim(s.substr(1, s.size() - 2));
            static const std::vector<std::string> known = {
                "wavefunction", "povm", "grid", "density", "limit_study",
                "algebra_checks", "output", "tolerances", "run"};
            if (!contains(known, section))
                fail_at(origin, line, "unknown section [" + section + "]");
            continue;
        }

        const auto eq = s.find('=');
        if (eq == std::string::npos) fail_at(origin, line, "expected key = value");
        const std::string key = trim(s.substr(0, eq));
        if (key.empty()) fail_at(origin, line, "missing key before '='");
        const ConfigValue value = parse_value(trim(s.substr(eq + 1)), origin, line);
        const Reader r(value, origin, line, key);

        auto unknown = [&]() {
            const std::string where = section.empty() ? "at top level" : "in [" + section + "]";
            fail_at(origin, line, "unknown key '" + key + "' " + where);
        };

        if (section.empty()) {
            if (key == "schema_version") c.schema_version = r.integer();
            else if (key == "tasks") c.tasks = r.string_list();
            else unknown();
        } else if (section == "wavefunction") {
            if (key == "family") c.wavefunction.family = r.string();
            else if (key == "center") c.wavefunction.center = r.number_array<4>();
            else if (key == "width") c.wavefunction.width = r.number_array<4>();
            else if (key == "j") c.wavefunction.j = r.number();
            else if (key == "m") c.wavefunction.m = r.number();
            else if (key == "poly_degree") c.wavefunction.poly_degree = r.integer();
            else if (key == "g_center") c.wavefunction.g_center = r.number_array<2>();
            else if (key == "g_width") c.wavefunction.g_width = r.number_array<2>();
            else unknown();
        } else if (section == "povm") {
            if (key == "name") c.povm.name = r.string();
            else if (key == "alpha") c.povm.alpha = r.number();
            else if (key == "window") c.povm.window = r.number_array<2>();
            else unknown();
        } else if (section == "grid") {
            if (key == "kmin") { c.grid.kmin = r.number_array<4>(); saw_kmin = true; }
            else if (key == "kmax") { c.grid.kmax = r.number_array<4>(); saw_kmax = true; }
            else if (key == "points_per_axis") c.grid.points_per_axis = r.integer();
            else if (key == "leak_tol") c.grid.leak_tol = r.number();
            else unknown();
        } else if (section == "density") {
            if (key == "points_per_axis") c.density.points_per_axis = r.integer();
            else if (key == "span") c.density.span = r.number();
            else unknown();
        } else if (section == "limit_study") {
            if (key == "j_list") c.limit_study.j_list = r.integer_list();
            else if (key == "points_per_axis") c.limit_study.points_per_axis = r.integer();
            else if (key == "leak_tol") c.limit_study.leak_tol = r.number();
            else if (key == "mass_floor") c.limit_study.mass_floor = r.number();
            else unknown();
        } else if (section == "algebra_checks") {
            if (key == "two_j_max") c.algebra_checks.two_j_max = r.integer();
            else if (key == "samples") c.algebra_checks.samples = r.integer();
            else unknown();
        } else if (section == "output") {
            if (key == "directory") c.output.directory = r.string();
            else if (key == "formats") c.output.formats = r.string_list();
            else unknown();
        } else if (section == "tolerances") {
            if (key == "norm_tol") c.tolerances.norm_tol = r.number();
            else if (key == "face_tol") c.tolerances.face_tol = r.number();
            else unknown();
        } else if (section == "run") {
            if (key == "threads") c.run.threads = r.integer();
            else if (key == "recenter") c.run.recenter = r.boolean();
            else unknown();
        }
    }

    c.grid.auto_box = !(saw_kmin && saw_kmax);
    validate(c, saw_kmin, saw_kmax);
    return c;
}

RunConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path);
}

std::string serialize_config(const RunConfig& c) {
    std::ostringstream out;
    auto arr = [&](const Real* data, std::size_t n) {
        std::string s = "[";
        for (std::size_t i = 0; i < n; ++i) {
            if (i) s += ", ";
            s += format_real(data[i]);
        }
        return s + "]";
    };
    out << "schema_version = " << c.schema_version << "\n";
    out << "tasks = [";
    for (std::size_t i = 0; i < c.tasks.size(); ++i)
        out << (i ? ", " : "") << '"' << c.tasks[i] << '"';
    out << "]\n";

    out << "\n[wavefunction]\n";
    out << "family = \"" << c.wavefunction.family << "\"\n";
    out << "center = " << arr(c.wavefunction.center.data(), 4) << "\n";
    out << "width = " << arr(c.wavefunction.width.data(), 4) << "\n";
    out << "j = " << format_real(c.wavefunction.j) << "\n";
    out << "m = " << format_real(c.wavefunction.m) << "\n";
    out << "poly_degree = " << c.wavefunction.poly_degree << "\n";
    out << "g_center = " << arr(c.wavefunction.g_center.data(), 2) << "\n";
    out << "g_width = " << arr(c.wavefunction.g_width.data(), 2) << "\n";

    out << "\n[povm]\n";
    out << "name = \"" << c.povm.name << "\"\n";
    out << "alpha = " << format_real(c.povm.alpha) << "\n";
    out << "window = " << arr(c.povm.window.data(), 2) << "\n";

    out << "\n[grid]\n";
    if (!c.grid.auto_box) {
        out << "kmin = " << arr(c.grid.kmin.data(), 4) << "\n";
        out << "kmax = " << arr(c.grid.kmax.data(), 4) << "\n";
    }
    out << "points_per_axis = " << c.grid.points_per_axis << "\n";
    out << "leak_tol = " << format_real(c.grid.leak_tol) << "\n";

    out << "\n[density]\n";
    out << "points_per_axis = " << c.density.points_per_axis << "\n";
    out << "span = " << format_real(c.density.span) << "\n";

    out << "\n[limit_study]\n";
    out << "j_list = [";
    for (std::size_t i = 0; i < c.limit_study.j_list.size(); ++i)
        out << (i ? ", " : "") << c.limit_study.j_list[i];
    out << "]\n";
    out << "points_per_axis = " << c.limit_study.points_per_axis << "\n";
    out << "leak_tol = " << format_real(c.limit_study.leak_tol) << "\n";
    out << "mass_floor = " << format_real(c.limit_study.mass_floor) << "\n";

    out << "\n[algebra_checks]\n";
    out << "two_j_max = " << c.algebra_checks.two_j_max << "\n";
    out << "samples = " << c.algebra_checks.samples << "\n";

    out << "\n[output]\n";
    out << "directory = \"" << c.output.directory << "\"\n";
    out << "formats = [";
    for (std::size_t i = 0; i < c.output.formats.size(); ++i)
        out << (i ? ", " : "") << '"' << c.output.formats[i] << '"';
    out << "]\n";

    out << "\n[tolerances]\n";
    out << "norm_tol = " << format_real(c.tolerances.norm_tol) << "\n";
    out << "face_tol = " << format_real(c.tolerances.face_tol) << "\n";

    out << "\n[run]\n";
    out << "threads = " << c.run.threads << "\n";
    out << "recenter = " << (c.run.recenter ? "true" : "false") << "\n";
    return out.str();
}

std::string config_hash(const RunConfig& config) {
    const std::string text = serialize_config(config);
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace eventpovm
