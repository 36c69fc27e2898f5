// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <string_view>

namespace wpc
{
using WarningSink = std::function<void(std::string_view)>;

// Route library warnings somewhere else (default: stderr). Returns the
// previous sink so callers can restore it.
WarningSink set_warning_sink(WarningSink sink);

void warn(std::string_view message);

}  // namespace wpc
