// Copyright 2026 The Resilient TGCN Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rtgcn/ieee118.hpp"

#include <array>

namespace rtgcn {

namespace {

// Generated by force_directed_layout(graph, kIeee118LayoutSeed,
// kIeee118LayoutIterations, kIeee118LayoutExtent) and frozen here.
constexpr std::array<Point, 118> kLayout = {{
    {990.3847872186889, 791.6799079438574},
    {963.7118300459604, 789.7648394323143},
    {966.9674295039182, 752.5746486214534},
    {976.621994953198, 714.8542295320617},
    {951.5829249734028, 701.9464477664246},
    {986.7225564800177, 736.448862001885},
    {974.9352485086058, 765.3553755340232},
    {897.4019465386681, 640.2711628487978},
    {956.2363886295883, 639.0606811281851},
    {1000, 639.1850939512685},
    {943.022545531529, 716.2130320171111},
    {931.40593062708, 749.4637693725726},
    {910.4453716726639, 678.519711888924},
    {900.0476461019507, 699.1493972469002},
    {865.6954646607705, 639.9039167258919},
    {871.7384654054475, 716.660488915187},
    {815.4496825763977, 666.9348227746682},
    {832.0629292329352, 637.4026003239641},
    {833.1763233820838, 595.9977371466669},
    {785.3321455639707, 614.5497178117153},
    {735.0448125566919, 623.3379100013465},
    {690.3298009144808, 623.4316680414338},
    {656.0185539464543, 610.439346745719},
    {595.5555175092641, 520.8350971580562},
    {696.6554463869078, 654.0484872490471},
    {753.9121834950906, 626.6753151907053},
    {689.750732135754, 712.5402186378551},
    {704.6405748340853, 754.4983782762675},
    {736.8084712440897, 748.1364072761047},
    {808.4036184442745, 590.1476455115996},
    {756.7291155060335, 703.8568528551702},
    {702.7866255340732, 680.769704946804},
    {850.9995231273946, 563.4723205407796},
    {831.9574392508277, 523.2395182200116},
    {863.9377547098197, 489.2748613125318},
    {870.7344915511151, 511.60177458608115},
    {821.8206986585335, 488.71213468152206},
    {757.3551717115854, 479.4123401322672},
    {829.8486319186417, 448.53455953704713},
    {802.1245199935222, 419.48354644937126},
    {794.8296710703651, 381.6853990941585},
    {756.5554181830203, 360.67580524559867},
    {800.6354390429364, 466.1040257451476},
    {762.1140583953909, 411.3288491053597},
    {718.172867020643, 357.5492189861781},
    {676.4616310645339, 342.03106109518563},
    {634.1554622379248, 326.10881043630496},
    {692.1471199952364, 326.35079048229517},
    {687.4787833063959, 304.19603281895036},
    {742.0326184932884, 276.2802036906329},
    {713.5854970231635, 230.6941140782981},
    {723.3974524273374, 180.00658005846662},
    {746.4040359842473, 179.93315882813434},
    {735.2744595444441, 233.33999713706007},
    {763.7397838387044, 200.69770309799853},
    {766.1215692326875, 213.8790823452693},
    {778.3543902045182, 242.76942546352737},
    {744.1089067282, 196.2589379338298},
    {739.4670364616218, 221.52511878261728},
    {703.6849965555429, 220.5996004102312},
    {711.2935470900168, 249.82464786233362},
    {683.3733831729602, 254.3344395614358},
    {735.508466409929, 259.79524428694384},
    {709.8318828051767, 302.1576598510834},
    {679.7935926434243, 371.7439246318771},
    {672.8644103020197, 304.33568971595196},
    {662.7560974200234, 266.96606222974066},
    {575.0124278061751, 326.7865908775145},
    {568.7781973133262, 336.8952349728582},
    {553.1641791320527, 424.46158007832275},
    {533.5259329344366, 477.9113010484008},
    {555.737417350979, 511.6656874657897},
    {503.3298577581894, 503.3752092725459},
    {523.2159077166184, 398.5607891493676},
    {512.7863025705037, 359.44092022557606},
    {450.48256339951047, 330.2017454419828},
    {455.43436148721605, 297.8283328769098},
    {416.15419897295567, 290.8171439043366},
    {384.5247311505201, 285.34135472641515},
    {368.42140588491526, 266.809377528551},
    {472.08174438693635, 293.5977523878996},
    {379.0651339307822, 226.58835882500162},
    {328.97271106912336, 151.97696332618202},
    {308.9400278392007, 112.93573320571794},
    {279.08680754572737, 97.54388771658084},
    {264.7257401505428, 40.580364362440505},
    {252.23857420310202, 0},
    {246.65059884637515, 81.2008325039258},
    {229.27654926623586, 109.927532279883},
    {193.44489901261653, 93.62670937303861},
    {186.88918811652337, 123.56366268215505},
    {209.8940681610726, 165.48190219768068},
    {223.92595453058502, 182.0726906011046},
    {250.38398480979757, 203.8114432949594},
    {282.8539729639267, 210.0834650662541},
    {320.08653024646054, 227.86947559917144},
    {338.9784882995337, 249.4663050150938},
    {284.0635897772638, 244.5869255747784},
    {281.73433360370007, 253.37352113804656},
    {203.08139657182932, 224.47420773491257},
    {173.208187747061, 196.92165070489054},
    {172.47352887910688, 166.8724338411766},
    {119.93500527344413, 218.78485334708674},
    {144.60953379231495, 227.30175259117078},
    {101.61582532506088, 237.70222519131178},
    {141.2985171527079, 244.1192316993558},
    {104.10863623126184, 258.4347543538271},
    {52.01809171823273, 239.81405096706635},
    {20.963144247113668, 229.3635256259615},
    {44.86717181440004, 208.48038262177303},
    {0, 206.37435407733793},
    {6.800606054273975, 187.61374524649455},
    {760.2777324645662, 683.3672244338786},
    {675.065296695717, 722.6313467302596},
    {667.322669095524, 746.4474773873363},
    {557.502967041921, 298.14908501794065},
    {938.0558501482835, 794.3279140667659},
    {473.70423701949863, 352.7036765854354},
}};

}  // namespace

const std::vector<BranchRecord>& ieee118_branches() {
  static const std::vector<BranchRecord> branches = {
      {1, 2, 0.09990},
      {1, 3, 0.04240},
      {4, 5, 0.00798},
      {3, 5, 0.10800},
      {5, 6, 0.05400},
      {6, 7, 0.02080},
      {8, 9, 0.03050},
      {8, 5, 0.02670},
      {9, 10, 0.03220},
      {4, 11, 0.06880},
      {5, 11, 0.06820},
      {11, 12, 0.01960},
      {2, 12, 0.06160},
      {3, 12, 0.16000},
      {7, 12, 0.03400},
      {11, 13, 0.07310},
      {12, 14, 0.07070},
      {13, 15, 0.24440},
      {14, 15, 0.19500},
      {12, 16, 0.08340},
      {15, 17, 0.04370},
      {16, 17, 0.18010},
      {17, 18, 0.05050},
      {18, 19, 0.04930},
      {19, 20, 0.11700},
      {15, 19, 0.03940},
      {20, 21, 0.08490},
      {21, 22, 0.09700},
      {22, 23, 0.15900},
      {23, 24, 0.04920},
      {23, 25, 0.08000},
      {26, 25, 0.03820},
      {25, 27, 0.16300},
      {27, 28, 0.08550},
      {28, 29, 0.09430},
      {30, 17, 0.03880},
      {8, 30, 0.05040},
      {26, 30, 0.08600},
      {17, 31, 0.15630},
      {29, 31, 0.03310},
      {23, 32, 0.11530},
      {31, 32, 0.09850},
      {27, 32, 0.07550},
      {15, 33, 0.12440},
      {19, 34, 0.24700},
      {35, 36, 0.01020},
      {35, 37, 0.04970},
      {33, 37, 0.14200},
      {34, 36, 0.02680},
      {34, 37, 0.00940},
      {38, 37, 0.03750},
      {37, 39, 0.10600},
      {37, 40, 0.16800},
      {30, 38, 0.05400},
      {39, 40, 0.06050},
      {40, 41, 0.04870},
      {40, 42, 0.18300},
      {41, 42, 0.13500},
      {43, 44, 0.24540},
      {34, 43, 0.16810},
      {44, 45, 0.09010},
      {45, 46, 0.13560},
      {46, 47, 0.12700},
      {46, 48, 0.18900},
      {47, 49, 0.06250},
      {42, 49, 0.32300},
      {42, 49, 0.32300},
      {45, 49, 0.18600},
      {48, 49, 0.05050},
      {49, 50, 0.07520},
      {49, 51, 0.13700},
      {51, 52, 0.05880},
      {52, 53, 0.16350},
      {53, 54, 0.12200},
      {49, 54, 0.28900},
      {49, 54, 0.29100},
      {54, 55, 0.07070},
      {54, 56, 0.00955},
      {55, 56, 0.01510},
      {56, 57, 0.09660},
      {50, 57, 0.13400},
      {56, 58, 0.09660},
      {51, 58, 0.07190},
      {54, 59, 0.22930},
      {56, 59, 0.25100},
      {56, 59, 0.23900},
      {55, 59, 0.21580},
      {59, 60, 0.14500},
      {59, 61, 0.15000},
      {60, 61, 0.01350},
      {60, 62, 0.05610},
      {61, 62, 0.03760},
      {63, 59, 0.03860},
      {63, 64, 0.02000},
      {64, 61, 0.02680},
      {38, 65, 0.09860},
      {64, 65, 0.03020},
      {49, 66, 0.09190},
      {49, 66, 0.09190},
      {62, 66, 0.21800},
      {62, 67, 0.11700},
      {65, 66, 0.03700},
      {66, 67, 0.10150},
      {65, 68, 0.01600},
      {47, 69, 0.27780},
      {49, 69, 0.32400},
      {68, 69, 0.03700},
      {69, 70, 0.12700},
      {24, 70, 0.41150},
      {70, 71, 0.03550},
      {24, 72, 0.19600},
      {71, 72, 0.18000},
      {71, 73, 0.04540},
      {70, 74, 0.13230},
      {70, 75, 0.14100},
      {69, 75, 0.12200},
      {74, 75, 0.04060},
      {76, 77, 0.14800},
      {69, 77, 0.10100},
      {75, 77, 0.19990},
      {77, 78, 0.01240},
      {78, 79, 0.02440},
      {77, 80, 0.04850},
      {77, 80, 0.10500},
      {79, 80, 0.07040},
      {68, 81, 0.02020},
      {81, 80, 0.03700},
      {77, 82, 0.08530},
      {82, 83, 0.03665},
      {83, 84, 0.13200},
      {83, 85, 0.14800},
      {84, 85, 0.06410},
      {85, 86, 0.12300},
      {86, 87, 0.20740},
      {85, 88, 0.10200},
      {85, 89, 0.17300},
      {88, 89, 0.07120},
      {89, 90, 0.18800},
      {89, 90, 0.09970},
      {90, 91, 0.08360},
      {89, 92, 0.05050},
      {89, 92, 0.15810},
      {91, 92, 0.12720},
      {92, 93, 0.08480},
      {92, 94, 0.15800},
      {93, 94, 0.07320},
      {94, 95, 0.04340},
      {80, 96, 0.18200},
      {82, 96, 0.05300},
      {94, 96, 0.08690},
      {80, 97, 0.09340},
      {80, 98, 0.10800},
      {80, 99, 0.20600},
      {92, 100, 0.29500},
      {94, 100, 0.05800},
      {95, 96, 0.05470},
      {96, 97, 0.08850},
      {98, 100, 0.17900},
      {99, 100, 0.08130},
      {100, 101, 0.12620},
      {92, 102, 0.05590},
      {101, 102, 0.11200},
      {100, 103, 0.05250},
      {100, 104, 0.20400},
      {103, 104, 0.15840},
      {103, 105, 0.16250},
      {100, 106, 0.22900},
      {104, 105, 0.03780},
      {105, 106, 0.05470},
      {105, 107, 0.18300},
      {105, 108, 0.07030},
      {106, 107, 0.18300},
      {108, 109, 0.02880},
      {103, 110, 0.18130},
      {109, 110, 0.07620},
      {110, 111, 0.07550},
      {110, 112, 0.06400},
      {17, 113, 0.03010},
      {32, 113, 0.20300},
      {32, 114, 0.06120},
      {27, 115, 0.07410},
      {114, 115, 0.01040},
      {68, 116, 0.00405},
      {12, 117, 0.14000},
      {75, 118, 0.04810},
      {76, 118, 0.05440}};
  return branches;
}

PowerNetwork ieee118_network() {
  std::string text = "slack 68\n[lines]\n";
  for (const BranchRecord& b : ieee118_branches()) {
    text += std::to_string(b.from_bus - 1) + " " + std::to_string(b.to_bus - 1) + " " +
            format_double(1.0 / b.reactance) + "\n";
  }
  PowerNetwork net = parse_network(text);
  net.coordinates.assign(kLayout.begin(), kLayout.end());
  net.validate();
  return net;
}

}  // namespace rtgcn
