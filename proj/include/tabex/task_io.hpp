#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "tabex/table.hpp"

namespace tabex {

// Task files are line-oriented JSON: one object per line with fields
// {id, raw_text, ground_truth_html, source_dataset, split}.

std::string task_to_json_line(const Task& task);
Task task_from_json_line(const std::string& line);

void write_tasks(std::ostream& out, const std::vector<Task>& tasks);
std::vector<Task> read_tasks(std::istream& in);
std::vector<Task> read_tasks_file(const std::string& path);
void write_tasks_file(const std::string& path, const std::vector<Task>& tasks);

// Stream a JSONL file line by line (blank lines skipped); the handler gets
// the 1-based line number.
void for_each_jsonl_line(std::istream& in,
                         const std::function<void(std::size_t, const std::string&)>& fn);

}  // namespace tabex
