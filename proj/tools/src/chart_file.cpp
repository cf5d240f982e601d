#include "tdual/tools/chart_file.hpp"

#include <fstream>
#include <optional>
#include <sstream>

#include "tdual/sexpr.hpp"

namespace tdual::tools {

namespace {

struct Builder {
    std::string origin;
    std::string name = "chart";
    Domain domain;
    std::vector<std::string> base;
    std::vector<std::string> fibers;
    std::vector<Scalar> exclusions;
    std::optional<BundleChart> chart;
    std::map<std::string, std::string> macros;
    ChartFile out;

    [[noreturn]] void fail(std::size_t line, const std::string& msg) const {
        throw ConfigError(origin + ":" + std::to_string(line) + ": " + msg);
    }

    std::string expand(std::string text) const {
        std::string res;
        for (std::size_t i = 0; i < text.size();) {
            if (text[i] != '$') {
                res += text[i++];
                continue;
            }
            std::size_t j = i + 1;
            while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
            std::string key = text.substr(i + 1, j - i - 1);
            auto it = macros.find(key);
            if (it == macros.end()) throw ConfigError("undefined scalar '$" + key + "'");
            res += it->second;
            i = j;
        }
        return res;
    }

    BundleChart& need_chart(std::size_t line) {
        if (!chart) {
            if (base.empty() && fibers.empty()) fail(line, "declare base and fiber lines first");
            chart.emplace(name, domain, base, fibers);
        }
        return *chart;
    }

    void handle(std::size_t line, const std::string& key, std::istringstream& rest) {
        auto word = [&]() {
            std::string w;
            if (!(rest >> w)) fail(line, "missing argument for '" + key + "'");
            return w;
        };
        auto tail = [&]() {
            std::string t;
            std::getline(rest, t);
            auto b = t.find_first_not_of(" \t");
            if (b == std::string::npos) fail(line, "missing expression for '" + key + "'");
            return expand(t.substr(b));
        };
        auto number = [&]() {
            std::string w = word();
            try {
                return std::stod(w);
            } catch (const std::exception&) {
                fail(line, "expected a number, got '" + w + "'");
            }
        };

        if (key == "chart") {
            if (chart) fail(line, "chart name must come first");
            name = word();
        } else if (key == "base" || key == "fiber") {
            if (chart) fail(line, "base and fiber lines must precede forms");
            if (key == "base") {
                std::string v = word();
                double lo = number();
                double hi = number();
                domain.add(v, lo, hi);
                base.push_back(v);
            } else {
                fibers.push_back(word());
            }
        } else if (key == "margin") {
            domain.set_margin(number());
            if (chart) chart->set_domain(domain);
        } else if (key == "exclude") {
            domain.exclude(Scalar::parse(tail()));
            if (chart) chart->set_domain(domain);
        } else if (key == "scalar") {
            std::string n = word();
            std::string text = tail();
            out.scalars.insert_or_assign(n, Scalar::parse(text));
            macros.insert_or_assign(n, "(+ 0 " + text + ")");
        } else if (key == "curvature") {
            BundleChart& ch = need_chart(line);
            std::string fib = word();
            std::size_t idx = ch.fibers().size();
            for (std::size_t i = 0; i < ch.fibers().size(); ++i)
                if (ch.fibers()[i] == fib) idx = i;
            if (idx == ch.fibers().size()) fail(line, "unknown fiber '" + fib + "'");
            ch.set_curvature(idx, ch.parse_form(tail()));
        } else if (key == "flux") {
            BundleChart& ch = need_chart(line);
            ch.set_flux(ch.parse_form(tail()));
        } else if (key == "form") {
            BundleChart& ch = need_chart(line);
            std::string n = word();
            out.forms.insert_or_assign(n, ch.parse_form(tail()));
        } else {
            fail(line, "unknown keyword '" + key + "'");
        }
    }
};

}  // namespace

const Form& ChartFile::form(const std::string& name) const {
    auto it = forms.find(name);
    if (it == forms.end()) throw ConfigError("chart '" + chart.name() + "' has no form '" + name + "'");
    return it->second;
}

const Scalar& ChartFile::scalar(const std::string& name) const {
    auto it = scalars.find(name);
    if (it == scalars.end()) throw ConfigError("chart '" + chart.name() + "' has no scalar '" + name + "'");
    return it->second;
}

ChartFile parse_chart(std::string_view text, const std::string& origin) {
    Builder b;
    b.origin = origin;
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t line = 0;
    while (std::getline(in, raw)) {
        ++line;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
        std::istringstream ls(raw);
        std::string key;
        if (!(ls >> key)) continue;
        try {
            b.handle(line, key, ls);
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception& e) {
            b.fail(line, e.what());
        }
    }
    b.need_chart(line);
    b.out.chart = std::move(*b.chart);
    return std::move(b.out);
}

ChartFile load_chart(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open chart file " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_chart(ss.str(), path.string());
}

}  // namespace tdual::tools
