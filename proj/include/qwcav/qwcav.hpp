// qwcav.hpp: umbrella include.

#pragma once

#include "qwcav/app.hpp"
#include "qwcav/dressed.hpp"
#include "qwcav/envelopes.hpp"
#include "qwcav/figures.hpp"
#include "qwcav/io.hpp"
#include "qwcav/observables.hpp"
#include "qwcav/ode.hpp"
#include "qwcav/oracle/lindblad.hpp"
#include "qwcav/oracle/linear_system.hpp"
#include "qwcav/params.hpp"
#include "qwcav/run_config.hpp"
#include "qwcav/verify.hpp"
