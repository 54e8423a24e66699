#include "sgscert/report.hpp"

#include <json.hpp>

namespace sgscert {

using nlohmann::json;

namespace {

json jinterval(const Interval& x) { return json::array({x.lo(), x.hi()}); }

std::string csv_escape(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace

void write_scan_csv(const ScanResult& r, std::ostream& os)
{
    for (const Axis& a : r.axes) os << to_string(a.param) << "_lo," << to_string(a.param) << "_hi,";
    os << "I1_lo,I1_hi,I2_lo,I2_hi,class,note\n";
    for (const ScanCell& c : r.cells) {
        for (const Interval& b : c.box) os << format_double(b.lo()) << ',' << format_double(b.hi()) << ',';
        if (c.evaluated) {
            os << format_double(c.I1.lo()) << ',' << format_double(c.I1.hi()) << ',' << format_double(c.I2.lo()) << ','
               << format_double(c.I2.hi()) << ',';
        } else {
            os << ",,,,";
        }
        os << to_string(c.cls) << ',' << csv_escape(c.note) << '\n';
    }
}

void write_scan_json(const ScanResult& r, std::ostream& os)
{
    json axes = json::array();
    for (const Axis& a : r.axes) {
        axes.push_back(json{{"param", to_string(a.param)},
                            {"lo", jinterval(a.lo)},
                            {"hi", jinterval(a.hi)},
                            {"width", jinterval(a.width)},
                            {"count", a.count()}});
    }
    json counts;
    for (CellClass c : {CellClass::None, CellClass::I1Neg, CellClass::I2Neg, CellClass::Both}) {
        counts[to_string(c)] = r.counts[static_cast<std::size_t>(c)];
    }
    json cells = json::array();
    for (const ScanCell& c : r.cells) {
        json box = json::array();
        for (const Interval& b : c.box) box.push_back(jinterval(b));
        json cell{{"box", box}, {"class", to_string(c.cls)}};
        if (c.evaluated) {
            cell["I1"] = jinterval(c.I1);
            cell["I2"] = jinterval(c.I2);
        } else {
            cell["I1"] = nullptr;
            cell["I2"] = nullptr;
        }
        if (!c.note.empty()) cell["note"] = c.note;
        cells.push_back(cell);
    }
    os << json{{"axes", axes}, {"counts", counts}, {"cells", cells}}.dump(1) << '\n';
}

void write_scan_ppm(const ScanResult& r, std::ostream& os)
{
    const std::size_t w = r.cols(), h = r.rows();
    os << "P6\n" << w << ' ' << h << "\n255\n";
    for (std::size_t row = h; row-- > 0;) {
        for (std::size_t col = 0; col < w; ++col) {
            const auto& px = kPalette[static_cast<std::size_t>(r.cells[row * w + col].cls)];
            os.write(reinterpret_cast<const char*>(px.data()), 3);
        }
    }
}

void write_check_text(const CheckReport& r, std::ostream& os)
{
    const ExistenceReport& e = r.existence;
    os << "interface: " << r.interface << '\n';
    os << "route: " << to_string(e.route) << '\n';
    os << "I1 = " << e.result.I1 << "  (" << to_string(e.result.sign1()) << ")\n";
    os << "I2 = " << e.result.I2 << "  (" << to_string(e.result.sign2()) << ")\n";
    if (r.has_scaled) {
        os << "I1 scaled = " << r.scaled.I1 << '\n';
        os << "I2 scaled = " << r.scaled.I2 << '\n';
    }
    if (r.has_published) {
        os << "I1 published formula (not certified) = " << r.published.I1 << '\n';
        os << "I2 published formula (not certified) = " << r.published.I2 << '\n';
    }
    os << "verdict: " << to_string(e.verdict.verdict) << '\n';
    os << "reason: " << e.verdict.reason() << '\n';
    if (!e.note.empty()) os << "note: " << e.note << '\n';
}

void write_check_json(const CheckReport& r, std::ostream& os)
{
    const ExistenceReport& e = r.existence;
    json j{{"interface", r.interface},
           {"route", to_string(e.route)},
           {"I1", jinterval(e.result.I1)},
           {"I2", jinterval(e.result.I2)},
           {"sign1", to_string(e.result.sign1())},
           {"sign2", to_string(e.result.sign2())},
           {"verdict", to_string(e.verdict.verdict)},
           {"reason", e.verdict.reason()}};
    if (r.has_scaled) j["scaled"] = {{"I1", jinterval(r.scaled.I1)}, {"I2", jinterval(r.scaled.I2)}};
    if (r.has_published) j["published"] = {{"I1", jinterval(r.published.I1)}, {"I2", jinterval(r.published.I2)}};
    if (!e.note.empty()) j["note"] = e.note;
    os << j.dump(2) << '\n';
}

void write_bloch_csv(const std::vector<BlochRow>& rows, std::ostream& os)
{
    os << "name,x_lo,x_hi,lo,hi\n";
    for (const BlochRow& r : rows) {
        os << r.name << ',';
        if (r.has_x) {
            os << format_double(r.x.lo()) << ',' << format_double(r.x.hi()) << ',';
        } else {
            os << ",,";
        }
        os << format_double(r.value.lo()) << ',' << format_double(r.value.hi()) << '\n';
    }
}

void write_bloch_json(const std::vector<BlochRow>& rows, std::ostream& os)
{
    json scalars = json::object();
    json profiles = json::object();
    for (const BlochRow& r : rows) {
        if (r.has_x) {
            profiles[r.name].push_back(json{{"x", jinterval(r.x)}, {"value", jinterval(r.value)}});
        } else {
            scalars[r.name] = jinterval(r.value);
        }
    }
    os << json{{"quantities", scalars}, {"profiles", profiles}}.dump(1) << '\n';
}

}  // namespace sgscert
