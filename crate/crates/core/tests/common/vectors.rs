//! Known-answer vectors, each checked against an independent implementation.

pub type Vector = (&'static str, &'static str, &'static str);

/// DES, key / plaintext / ciphertext.
pub const DES: &[Vector] = &[
    ("0101010101010101", "8000000000000000", "95f8a5e5dd31d900"),
    ("0101010101010101", "4000000000000000", "dd7f121ca5015619"),
    ("0101010101010101", "2000000000000000", "2e8653104f3834ea"),
    ("0101010101010101", "1000000000000000", "4bd388ff6cd81d4f"),
    ("0101010101010101", "0100000000000000", "0d9f279ba5d87260"),
    ("0101010101010101", "0001000000000000", "f356834379d165cd"),
    ("0101010101010101", "0000010000000000", "fbe00a8a1ef8ad72"),
    ("0101010101010101", "0000000100000000", "aeb5f5ede22d1a36"),
    ("0101010101010101", "0000000001000000", "4d49db1532919c9f"),
    ("0101010101010101", "0000000000010000", "8dd45a2ddf90796c"),
    ("0101010101010101", "0000000000000100", "dd7c0bbd61fafd54"),
    ("0101010101010101", "0000000000000001", "166b40b44aba4bd6"),
    ("133457799bbcdff1", "0123456789abcdef", "85e813540f0ab405"),
    ("0131d9619dc1376e", "5cd54ca83def57da", "7a389d10354bd271"),
    ("7ca110454a1a6e57", "01a1d6d039776742", "690f5b0d9a26939b"),
    ("0123456789abcdef", "4e6f772069732074", "3fa40e8a984d4815"),
    ("8101010101010101", "0000000000000000", "95a8d72813daa94d"),
    ("0181010101010101", "0000000000000000", "2055123350c00858"),
    ("0101810101010101", "0000000000000000", "a2dc9e92fd3cde92"),
    ("0101018101010101", "0000000000000000", "5199c29a52c9f059"),
];

/// Alternating encrypt/decrypt chain where each value is used as its own key.
pub const DES_CHAIN: (&str, usize, &str) = ("9474b8e8c73bca7d", 16, "1b1a2ddb4c642438");

/// Triple DES (encrypt-decrypt-encrypt), 24-byte key k1||k2||k3.
pub const TDES: &[Vector] = &[
    ("0123456789abcdef23456789abcdef01456789abcdef0123", "5468652071756663", "a826fd8ce53b855f"),
    ("0123456789abcdef23456789abcdef01456789abcdef0123", "6b2062726f776e20", "cce21c8112256fe6"),
    ("0123456789abcdef23456789abcdef01456789abcdef0123", "666f78206a756d70", "68d5c05dd9b6b900"),
    ("52f22665a60c12d289185d950ee8813609166f6b113d178d", "6c0fd3901ff239a1", "bb8d4ef8105920c8"),
    ("a095f20f9395650cf9380b8edb224a6b248a1e924e8fd0ae", "2e1a9492a3305f18", "f1922d7ed465e471"),
    ("8cb610900f9e347fae886dc6507795ec745c4c3fcb2eb2c7", "3e14934c867ee057", "1c3ca19e9749ddf1"),
    ("ba72499bfa121e836b2ac15726ee7d6b0af6ab13c38e92ca", "e0d15057b159987f", "eb908764969ce69d"),
    ("94cc7411d717f14579b2aa100fbbb34fa593feaed27248b7", "62e3ab5805f0765a", "df8a82acc88651b4"),
    ("2b9c1d7e0f37c44921bd3f6564eadf7f142a72668c47e223", "d16edd8c47b46afc", "006ff9142ea37ff1"),
    ("5baee261f53b26152d263ba83b037cd4962e434801256b88", "5e9c9051f320b0db", "fb8bf0d8c4524282"),
    ("83f39ea7adbd0d74e6dec7f3dfaecc8f646566641a7ba266", "0f3011fc3570291c", "121e257399909340"),
    ("57990d1a0091268919f25d9d0612df359d6026a240f4589a", "5d791f1dd97cfefa", "20bb7df439edcb1d"),
];

/// AES with a 16-byte key.
pub const AES128: &[Vector] = &[
    ("000102030405060708090a0b0c0d0e0f", "00112233445566778899aabbccddeeff", "69c4e0d86a7b0430d8cdb78070b4c55a"),
    ("2b7e151628aed2a6abf7158809cf4f3c", "6bc1bee22e409f96e93d7e117393172a", "3ad77bb40d7a3660a89ecaf32466ef97"),
    ("2b7e151628aed2a6abf7158809cf4f3c", "ae2d8a571e03ac9c9eb76fac45af8e51", "f5d3d58503b9699de785895a96fdbaaf"),
    ("2b7e151628aed2a6abf7158809cf4f3c", "30c81c46a35ce411e5fbc1191a0a52ef", "43b1cd7f598ece23881b00e3ed030688"),
    ("2b7e151628aed2a6abf7158809cf4f3c", "f69f2445df4f9b17ad2b417be66c3710", "7b0c785e27e8ad3f8223207104725dd4"),
    ("00000000000000000000000000000000", "80000000000000000000000000000000", "3ad78e726c1ec02b7ebfe92b23d9ec34"),
    ("00000000000000000000000000000000", "c0000000000000000000000000000000", "aae5939c8efdf2f04e60b9fe7117b2c2"),
    ("00000000000000000000000000000000", "e0000000000000000000000000000000", "f031d4d74f5dcbf39daaf8ca3af6e527"),
    ("00000000000000000000000000000000", "f0000000000000000000000000000000", "96d9fd5cc4f07441727df0f33e401a36"),
    ("00000000000000000000000000000000", "f8000000000000000000000000000000", "30ccdb044646d7e1f3ccea3dca08b8c0"),
    ("00000000000000000000000000000000", "fc000000000000000000000000000000", "16ae4ce5042a67ee8e177b7c587ecc82"),
];

/// AES with a 24-byte key.
pub const AES192: &[Vector] = &[
    ("000102030405060708090a0b0c0d0e0f1011121314151617", "00112233445566778899aabbccddeeff", "dda97ca4864cdfe06eaf70a0ec0d7191"),
    ("8e73b0f7da0e6452c810f32b809079e562f8ead2522c6b7b", "6bc1bee22e409f96e93d7e117393172a", "bd334f1d6e45f25ff712a214571fa5cc"),
    ("8e73b0f7da0e6452c810f32b809079e562f8ead2522c6b7b", "ae2d8a571e03ac9c9eb76fac45af8e51", "974104846d0ad3ad7734ecb3ecee4eef"),
    ("8e73b0f7da0e6452c810f32b809079e562f8ead2522c6b7b", "30c81c46a35ce411e5fbc1191a0a52ef", "ef7afd2270e2e60adce0ba2face6444e"),
    ("8e73b0f7da0e6452c810f32b809079e562f8ead2522c6b7b", "f69f2445df4f9b17ad2b417be66c3710", "9a4b41ba738d6c72fb16691603c18e0e"),
    ("000000000000000000000000000000000000000000000000", "80000000000000000000000000000000", "6cd02513e8d4dc986b4afe087a60bd0c"),
    ("000000000000000000000000000000000000000000000000", "c0000000000000000000000000000000", "2ce1f8b7e30627c1c4519eada44bc436"),
    ("000000000000000000000000000000000000000000000000", "e0000000000000000000000000000000", "9946b5f87af446f5796c1fee63a2da24"),
    ("000000000000000000000000000000000000000000000000", "f0000000000000000000000000000000", "2a560364ce529efc21788779568d5555"),
    ("000000000000000000000000000000000000000000000000", "f8000000000000000000000000000000", "35c1471837af446153bce55d5ba72a0a"),
    ("000000000000000000000000000000000000000000000000", "fc000000000000000000000000000000", "ce60bc52386234f158f84341e534cd9e"),
];

/// AES with a 32-byte key.
pub const AES256: &[Vector] = &[
    ("000102030405060708090a0b0c0d0e0f101112131415161718191a1b1c1d1e1f", "00112233445566778899aabbccddeeff", "8ea2b7ca516745bfeafc49904b496089"),
    ("603deb1015ca71be2b73aef0857d77811f352c073b6108d72d9810a30914dff4", "6bc1bee22e409f96e93d7e117393172a", "f3eed1bdb5d2a03c064b5a7e3db181f8"),
    ("603deb1015ca71be2b73aef0857d77811f352c073b6108d72d9810a30914dff4", "ae2d8a571e03ac9c9eb76fac45af8e51", "591ccb10d410ed26dc5ba74a31362870"),
    ("603deb1015ca71be2b73aef0857d77811f352c073b6108d72d9810a30914dff4", "30c81c46a35ce411e5fbc1191a0a52ef", "b6ed21b99ca6f4f9f153e7b1beafed1d"),
    ("603deb1015ca71be2b73aef0857d77811f352c073b6108d72d9810a30914dff4", "f69f2445df4f9b17ad2b417be66c3710", "23304b7a39f9f3ff067d8d8f9e24ecc7"),
    ("0000000000000000000000000000000000000000000000000000000000000000", "80000000000000000000000000000000", "ddc6bf790c15760d8d9aeb6f9a75fd4e"),
    ("0000000000000000000000000000000000000000000000000000000000000000", "c0000000000000000000000000000000", "0a6bdc6d4c1e6280301fd8e97ddbe601"),
    ("0000000000000000000000000000000000000000000000000000000000000000", "e0000000000000000000000000000000", "9b80eefb7ebe2d2b16247aa0efc72f5d"),
    ("0000000000000000000000000000000000000000000000000000000000000000", "f0000000000000000000000000000000", "7f2c5ece07a98d8bee13c51177395ff7"),
    ("0000000000000000000000000000000000000000000000000000000000000000", "f8000000000000000000000000000000", "7818d800dcf6f4be1e0e94f403d1e4c2"),
    ("0000000000000000000000000000000000000000000000000000000000000000", "fc000000000000000000000000000000", "e74cd1c92f0919c35a0324123d6177d3"),
];

/// Blowfish with 8-byte keys.
pub const BLOWFISH: &[Vector] = &[
    ("0000000000000000", "0000000000000000", "4ef997456198dd78"),
    ("ffffffffffffffff", "ffffffffffffffff", "51866fd5b85ecb8a"),
    ("3000000000000000", "1000000000000001", "7d856f9a613063f2"),
    ("1111111111111111", "1111111111111111", "2466dd878b963c9d"),
    ("0123456789abcdef", "1111111111111111", "61f9c3802281b096"),
    ("1111111111111111", "0123456789abcdef", "7d0cc630afda1ec7"),
    ("fedcba9876543210", "0123456789abcdef", "0aceab0fc6a0a28d"),
    ("7ca110454a1a6e57", "01a1d6d039776742", "59c68245eb05282b"),
    ("0131d9619dc1376e", "5cd54ca83def57da", "b1b8cc0b250f09a0"),
    ("07a1133e4a0b2686", "0248d43806f67172", "1730e5778bea1da4"),
    ("3849674c2602319e", "51454b582ddf440a", "a25e7856cf2651eb"),
    ("04b915ba43feb5b6", "42fd443059577fa2", "353882b109ce8f1a"),
    ("0113b970fd34f2ce", "059b5e0851cf143a", "48f4d0884c379918"),
    ("0170f175468fb5e6", "0756d8e0774761d2", "432193b78951fc98"),
    ("43297fad38e373fe", "762514b829bf486a", "13f04154d69d1ae5"),
    ("07a7137045da2a16", "3bdd119049372802", "2eedda93ffd39c79"),
    ("04689104c2fd3b2f", "26955f6835af609a", "d887e0393c2da6e3"),
    ("37d06bb516cb7546", "164d5e404f275232", "5f99d04f5b163969"),
    ("1f08260d1ac2465e", "6b056e18759f5cca", "4a057a3b24d3977b"),
    ("584023641aba6176", "004bd6ef09176062", "452031c1e4fada8e"),
    ("025816164629b007", "480d39006ee762f2", "7555ae39f59b87bd"),
    ("49793ebc79b3258f", "437540c8698f3cfa", "53c55f9cb49fc019"),
    ("4fb05e1515ab73a7", "072d43a077075292", "7a8e7bfa937e89a3"),
    ("49e95d6d4ca229bf", "02fe55778117f12a", "cf9c5d7a4986adb5"),
    ("018310dc409b26d6", "1d9d5c5018f728c2", "d1abb290658bc778"),
    ("1c587f1c13924fef", "305532286d6f295a", "55cb3774d13ef201"),
    ("0101010101010101", "0123456789abcdef", "fa34ec4847b268b2"),
    ("1f1f1f1f0e0e0e0e", "0123456789abcdef", "a790795108ea3cae"),
    ("e0fee0fef1fef1fe", "0123456789abcdef", "c39e072d9fac631d"),
    ("0000000000000000", "ffffffffffffffff", "014933e0cdaff6e4"),
    ("ffffffffffffffff", "0000000000000000", "f21e9a77b71c49bc"),
    ("0123456789abcdef", "0000000000000000", "245946885754369a"),
    ("fedcba9876543210", "ffffffffffffffff", "6b5c5a9c5d9e0a5a"),
];

/// Blowfish with prefixes of one key, lengths 4 to 24 bytes.
pub const BLOWFISH_KEY_LENGTHS: &[Vector] = &[
    ("f0e1d2c3", "fedcba9876543210", "be1e639408640f05"),
    ("f0e1d2c3b4", "fedcba9876543210", "b39e44481bdb1e6e"),
    ("f0e1d2c3b4a5", "fedcba9876543210", "9457aa83b1928c0d"),
    ("f0e1d2c3b4a596", "fedcba9876543210", "8bb77032f960629d"),
    ("f0e1d2c3b4a59687", "fedcba9876543210", "e87a244e2cc85e82"),
    ("f0e1d2c3b4a5968778", "fedcba9876543210", "15750e7a4f4ec577"),
    ("f0e1d2c3b4a596877869", "fedcba9876543210", "122ba70b3ab64ae0"),
    ("f0e1d2c3b4a5968778695a", "fedcba9876543210", "3a833c9affc537f6"),
    ("f0e1d2c3b4a5968778695a4b", "fedcba9876543210", "9409da87a90f6bf2"),
    ("f0e1d2c3b4a5968778695a4b3c", "fedcba9876543210", "884f80625060b8b4"),
    ("f0e1d2c3b4a5968778695a4b3c2d", "fedcba9876543210", "1f85031c19e11968"),
    ("f0e1d2c3b4a5968778695a4b3c2d1e", "fedcba9876543210", "79d9373a714ca34f"),
    ("f0e1d2c3b4a5968778695a4b3c2d1e0f", "fedcba9876543210", "93142887ee3be15c"),
    ("f0e1d2c3b4a5968778695a4b3c2d1e0f00", "fedcba9876543210", "03429e838ce2d14b"),
    ("f0e1d2c3b4a5968778695a4b3c2d1e0f0011", "fedcba9876543210", "a4299e27469ff67b"),
    ("f0e1d2c3b4a5968778695a4b3c2d1e0f001122", "fedcba9876543210", "afd5aed1c1bc96a8"),
    ("f0e1d2c3b4a5968778695a4b3c2d1e0f00112233", "fedcba9876543210", "10851c0e3858da9f"),
    ("f0e1d2c3b4a5968778695a4b3c2d1e0f0011223344", "fedcba9876543210", "e6f51ed79b9db21f"),
    ("f0e1d2c3b4a5968778695a4b3c2d1e0f001122334455", "fedcba9876543210", "64a6e14afd36b46f"),
    ("f0e1d2c3b4a5968778695a4b3c2d1e0f00112233445566", "fedcba9876543210", "80c7d7d45a5479ad"),
    ("f0e1d2c3b4a5968778695a4b3c2d1e0f0011223344556677", "fedcba9876543210", "05044b62fa52d080"),
];
