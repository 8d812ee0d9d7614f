#pragma once

#include "zxi/analytic_ref.hpp"
#include "zxi/crosslation.hpp"
#include "zxi/errors.hpp"
#include "zxi/estimation.hpp"
#include "zxi/interferogram.hpp"
#include "zxi/io.hpp"
#include "zxi/quadrature.hpp"
#include "zxi/signal_gen.hpp"
#include "zxi/spectrum_model.hpp"
#include "zxi/special.hpp"
#include "zxi/streaming.hpp"
#include "zxi/waveform.hpp"
#include "zxi/zero_crossing.hpp"
