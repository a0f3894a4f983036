#include "lintgrade/service.hpp"

#include <cctype>

#include "httplib.h"
#include "json.hpp"
#include "lintgrade/errors.hpp"

namespace lintgrade {

using nlohmann::json;

namespace {

void reply_error(httplib::Response& res, int status, const std::string& message) {
    res.status = status;
    res.set_content(json{{"error", message}}.dump(2) + "\n", "application/json");
}

}  // namespace

void register_routes(httplib::Server& server, const ServiceContext& context) {
    server.Get("/health", [](const httplib::Request&, httplib::Response& res) {
        res.set_content(json{{"status", "ok"}}.dump(2) + "\n", "application/json");
    });

    server.Post("/grade", [&context](const httplib::Request& req, httplib::Response& res) {
        json body = json::parse(req.body, nullptr, false);
        if (body.is_discarded() || !body.is_object()) {
            reply_error(res, 400, "request body must be a JSON object");
            return;
        }
        if (!body.contains("source") || !body["source"].is_string()) {
            reply_error(res, 400, "missing string field 'source'");
            return;
        }
        if (!body.contains("language") || !body["language"].is_string()) {
            reply_error(res, 400, "missing string field 'language'");
            return;
        }
        const std::string language = body["language"].get<std::string>();
        auto registry = context.registries.find(language);
        if (registry == context.registries.end()) {
            reply_error(res, 422, "unsupported language '" + language + "'");
            return;
        }

        ReportOptions options;
        if (body.contains("level")) {
            if (!body["level"].is_string()) {
                reply_error(res, 400, "'level' must be a string");
                return;
            }
            std::string level = body["level"].get<std::string>();
            for (char& c : level) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
            auto parsed = difficulty_from_name(level);
            if (!parsed) {
                reply_error(res, 400, "unknown level '" + body["level"].get<std::string>() + "'");
                return;
            }
            options.level = *parsed;
        }
        if (body.contains("student_id")) {
            if (!body["student_id"].is_string() || body["student_id"].get<std::string>().empty()) {
                reply_error(res, 400, "'student_id' must be a non-empty string");
                return;
            }
            if (context.store && context.history_window > 0) {
                options.store = &*context.store;
                options.student_id = body["student_id"].get<std::string>();
                options.history_window = context.history_window;
            }
        }

        auto configs = context.inspectors.find(language);
        static const std::vector<InspectorConfig> kNoInspectors;
        try {
            const QualityReport report = grade_source_text(
                body["source"].get<std::string>(), language, registry->second,
                configs != context.inspectors.end() ? configs->second : kNoInspectors, options);
            res.set_content(report_to_document(report), "application/json");
        } catch (const std::exception&) {
            reply_error(res, 500, "internal error while grading");
        }
    });
}

}  // namespace lintgrade
