#pragma once

// Everything at once.  The report header additionally needs nlohmann's
// json.hpp on the include path; include the individual module headers
// instead if that dependency is unwanted.

#include "persuasion/core.hpp"
#include "persuasion/lp.hpp"
#include "persuasion/meu.hpp"
#include "persuasion/value.hpp"
#include "persuasion/oracle.hpp"
#include "persuasion/vbp.hpp"
#include "persuasion/devices.hpp"
#include "persuasion/concavify.hpp"
#include "persuasion/report.hpp"
