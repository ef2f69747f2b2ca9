#pragma once

#include "boxqp/error.hpp"
#include "boxqp/numlin.hpp"
#include "boxqp/model.hpp"
#include "boxqp/rlt.hpp"
#include "boxqp/sdprlt.hpp"
#include "boxqp/oracle.hpp"
#include "boxqp/rng.hpp"
#include "boxqp/forge.hpp"
#include "boxqp/classify.hpp"
#include "boxqp/io.hpp"
