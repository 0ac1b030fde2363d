#include <wcoj/oracle.hpp>

#include <array>
#include <cmath>


namespace wcoj::oracle {

namespace {

/// Upper 1% points of chi-square for df = 1..200.
constexpr std::array<double, 200> critical_001 = {
    6.634896601, 9.210340372, 11.344866730, 13.276704136,
    15.086272469, 16.811893830, 18.475306907, 20.090235030,
    21.665994333, 23.209251159, 24.724970311, 26.216967306,
    27.688249610, 29.141237741, 30.577914167, 31.999926909,
    33.408663605, 34.805305735, 36.190869129, 37.566234787,
    38.932172684, 40.289360438, 41.638398119, 42.979820139,
    44.314104896, 45.641682666, 46.962942125, 48.278235770,
    49.587884473, 50.892181312, 52.191394833, 53.485771836,
    54.775539760, 56.060908748, 57.342073434, 58.619214502,
    59.892500045, 61.162086764, 62.428121016, 63.690739752,
    64.950071335, 66.206236284, 67.459347922, 68.709512969,
    69.956832066, 71.201400248, 72.443307377, 73.682638520,
    74.919474308, 76.153891249, 77.385962016, 78.615755715,
    79.843338122, 81.068771906, 82.292116829, 83.513429932,
    84.732765705, 85.950176245, 87.165711400, 88.379418901,
    89.591344491, 90.801532031, 92.010023614, 93.216859660,
    94.422079008, 95.625719000, 96.827815564, 98.028403283,
    99.227515471, 100.425184229, 101.621440514, 102.816314189,
    104.009834082, 105.202028030, 106.392922930, 107.582544781,
    108.770918726, 109.958069091, 111.144019423, 112.328792520,
    113.512410470, 114.694894678, 115.876265893, 117.056544243,
    118.235749254, 119.413899877, 120.591014513, 121.767111032,
    122.942206798, 124.116318686, 125.289463102, 126.461656000,
    127.632912901, 128.803248910, 129.972678727, 131.141216667,
    132.308876672, 133.475672323, 134.641616856, 135.806723171,
    136.971003847, 138.134471150, 139.297137045, 140.459013209,
    141.620111035, 142.780441647, 143.940015904, 145.098844414,
    146.256937537, 147.414305397, 148.570957887, 149.726904676,
    150.882155218, 152.036718760, 153.190604342, 154.343820811,
    155.496376820, 156.648280840, 157.799541160, 158.950165897,
    160.100162998, 161.249540244, 162.398305260, 163.546465512,
    164.694028319, 165.841000851, 166.987390137, 168.133203067,
    169.278446396, 170.423126751, 171.567250626, 172.710824397,
    173.853854314, 174.996346514, 176.138307016, 177.279741729,
    178.420656454, 179.561056885, 180.700948612, 181.840337127,
    182.979227822, 184.117625993, 185.255536845, 186.392965489,
    187.529916950, 188.666396165, 189.802407986, 190.937957183,
    192.073048446, 193.207686386, 194.341875535, 195.475620354,
    196.608925227, 197.741794469, 198.874232322, 200.006242963,
    201.137830499, 202.268998973, 203.399752365, 204.530094590,
    205.660029504, 206.789560902, 207.918692521, 209.047428040,
    210.175771081, 211.303725215, 212.431293954, 213.558480761,
    214.685289047, 215.811722172, 216.937783445, 218.063476130,
    219.188803440, 220.313768545, 221.438374566, 222.562624583,
    223.686521629, 224.810068695, 225.933268732, 227.056124648,
    228.178639310, 229.300815547, 230.422656148, 231.544163865,
    232.665341411, 233.786191464, 234.906716665, 236.026919620,
    237.146802900, 238.266369042, 239.385620550, 240.504559896,
    241.623189518, 242.741511824, 243.859529189, 244.977243960,
    246.094658453, 247.211774954, 248.328595720, 249.445122981
};

}

double chi_square_critical_001(std::size_t df)
{
    if (df == 0)
        return 0;
    if (df <= critical_001.size())
        return critical_001[df - 1];
    // Wilson–Hilferty: (X/k)^{1/3} is approximately normal.
    constexpr double z = 2.3263478740408408; // standard normal 0.99 quantile
    const double k = double(df);
    const double h = 2.0 / (9.0 * k);
    return k * std::pow(1.0 - h + z * std::sqrt(h), 3);
}

}
