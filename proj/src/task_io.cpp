#include "tabex/task_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_set>

#include <json.hpp>

#include "tabex/errors.hpp"

namespace tabex {

namespace {

using nlohmann::json;

std::string dump_safe(const json& j) {
    return j.dump(-1, ' ', false, json::error_handler_t::replace);
}

}  // namespace

std::string task_to_json_line(const Task& task) {
    json j;
    j["id"] = task.id;
    j["raw_text"] = task.raw_text;
    j["ground_truth_html"] = task.ground_truth_html;
    j["source_dataset"] = std::string(dataset_name(task.source_dataset));
    j["split"] = std::string(split_name(task.split));
    return dump_safe(j);
}

Task task_from_json_line(const std::string& line) {
    json j;
    try {
        j = json::parse(line);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::IoError, std::string("bad task line: ") + e.what());
    }
    Task task;
    task.id = j.value("id", "");
    task.raw_text = j.value("raw_text", "");
    task.ground_truth_html = j.value("ground_truth_html", "");
    if (task.id.empty()) throw Error(ErrorCode::IoError, "task line missing id");
    if (auto d = dataset_from_name(j.value("source_dataset", "other"))) {
        task.source_dataset = *d;
    }
    if (auto s = split_from_name(j.value("split", "test"))) {
        task.split = *s;
    }
    return task;
}

void write_tasks(std::ostream& out, const std::vector<Task>& tasks) {
    for (const Task& task : tasks) out << task_to_json_line(task) << '\n';
}

std::vector<Task> read_tasks(std::istream& in) {
    std::vector<Task> tasks;
    std::unordered_set<std::string> seen;
    for_each_jsonl_line(in, [&](std::size_t line_no, const std::string& line) {
        try {
            tasks.push_back(task_from_json_line(line));
        } catch (const Error& e) {
            throw Error(ErrorCode::IoError,
                        "line " + std::to_string(line_no) + ": " + e.what());
        }
        if (!seen.insert(tasks.back().id).second) {
            throw Error(ErrorCode::IoError, "line " + std::to_string(line_no) +
                                                ": duplicate task id " + tasks.back().id);
        }
    });
    return tasks;
}

std::vector<Task> read_tasks_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
    return read_tasks(in);
}

void write_tasks_file(const std::string& path, const std::vector<Task>& tasks) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + path);
    write_tasks(out, tasks);
}

void for_each_jsonl_line(std::istream& in,
                         const std::function<void(std::size_t, const std::string&)>& fn) {
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        fn(line_no, line);
    }
}

}  // namespace tabex
