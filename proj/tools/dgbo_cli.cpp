#include <cstdio>
#include <map>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"

using nlohmann::json;
using namespace dgbo::cli;

namespace {

json convert(const FlagSpec& f, const std::string& text) {
    auto split = [](const std::string& s) {
        std::vector<std::string> out;
        size_t start = 0;
        while (start <= s.size()) {
            const size_t comma = s.find(',', start);
            const size_t end = comma == std::string::npos ? s.size() : comma;
            if (end > start) out.push_back(s.substr(start, end - start));
            start = end + 1;
        }
        return out;
    };
    switch (f.kind) {
        case FlagSpec::Int: return json(std::stoll(text));
        case FlagSpec::Real: return json(parse_real(text));
        case FlagSpec::Bool:
            if (text == "true" || text == "1" || text == "on") return json(true);
            if (text == "false" || text == "0" || text == "off") return json(false);
            throw std::invalid_argument(f.flag + " expects true or false");
        case FlagSpec::Text: return json(text);
        case FlagSpec::RealList: return json(parse_real_list(text));
        case FlagSpec::TextList: return json(split(text));
    }
    return json(text);
}

struct Bound {
    FlagSpec spec;
    std::string value;
    CLI::Option* opt = nullptr;
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dispersion-generalized Benjamin-Ono pseudospectral lab"};
    app.require_subcommand(1);
    app.set_version_flag("--version", DGBO_VERSION);

    struct Sub {
        const Command* cmd;
        CLI::App* app;
        std::string config;
        std::vector<std::unique_ptr<Bound>> flags;
    };
    std::vector<std::unique_ptr<Sub>> subs;
    for (const auto& cmd : command_table()) {
        auto s = std::make_unique<Sub>();
        s->cmd = &cmd;
        s->app = app.add_subcommand(cmd.name, cmd.help);
        s->app->add_option("--config,-c", s->config, "JSON config file")->check(CLI::ExistingFile);
        auto add = [&](const FlagSpec& f) {
            auto b = std::make_unique<Bound>();
            b->spec = f;
            b->opt = s->app->add_option(f.flag, b->value, f.help + " [" + f.key + "]");
            s->flags.push_back(std::move(b));
        };
        for (const auto& f : common_flags()) add(f);
        for (const auto& f : cmd.flags) add(f);
        subs.push_back(std::move(s));
    }

    CLI11_PARSE(app, argc, argv);

    for (auto& s : subs) {
        if (!s->app->parsed()) continue;
        json overrides = json::object();
        json file_doc;
        try {
            for (const auto& b : s->flags)
                if (b->opt->count() > 0) set_path(overrides, b->spec.key, convert(b->spec, b->value));
            file_doc = load_json(s->config);
        } catch (const std::exception& e) {
            std::fprintf(stderr, "%s: %s\n", s->cmd->name.c_str(), e.what());
            return 2;
        }
        return execute(*s->cmd, merge_config(*s->cmd, file_doc, overrides));
    }
    return 2;
}
