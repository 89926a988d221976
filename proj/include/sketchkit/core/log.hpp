#pragma once

#include <functional>
#include <string>

namespace sketchkit {

using LogSink = std::function<void(const std::string&)>;

// Warnings go to stderr unless a sink is installed. Returns the previous sink.
LogSink set_warning_sink(LogSink sink);
void warn(const std::string& msg);

}  // namespace sketchkit
