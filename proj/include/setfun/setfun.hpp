#pragma once

#include "setfun/error.hpp"
#include "setfun/finmap.hpp"
#include "setfun/functors.hpp"
#include "setfun/heightone.hpp"
#include "setfun/isbell.hpp"
#include "setfun/json_io.hpp"
#include "setfun/nattrans.hpp"
#include "setfun/report.hpp"
#include "setfun/rigidify.hpp"
#include "setfun/space.hpp"
