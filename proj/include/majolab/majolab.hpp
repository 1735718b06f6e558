#pragma once

#include "majolab/error.hpp"
#include "majolab/distribution.hpp"
#include "majolab/majorization.hpp"
#include "majolab/flow_report.hpp"
#include "majolab/special_functions.hpp"
#include "majolab/chain_spectra.hpp"
#include "majolab/cft_spectrum.hpp"
#include "majolab/ed_oracle.hpp"
#include "majolab/serialize.hpp"
