#pragma once

#include "tailassign/core.hpp"
#include "tailassign/driver.hpp"
#include "tailassign/io.hpp"
#include "tailassign/master.hpp"
#include "tailassign/network.hpp"
#include "tailassign/oracle.hpp"
#include "tailassign/pricing.hpp"
#include "tailassign/propagation.hpp"
#include "tailassign/simplex.hpp"
