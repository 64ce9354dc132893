import type { ExchangeView, HintsView, SessionView, WhatIfView } from '../src/types.js';

// Responses recorded from a live service session on the known two-task pool
// X(4,7), Y(5,5), Z(0,4), whose optimal line is X, Y, Z with final score 3.

export const SID = '4596ce3174544220a6f8b0ba17261da1';

export const fresh: SessionView = {
  id: SID,
  status: 'awaiting_human',
  human_side: 'alice',
  engine_policy: 'exact',
  tasks: 2,
  to_move: 'alice',
  agents: [
    { id: 'X', eff: [4, 7], eff_str: null, owner: null },
    { id: 'Y', eff: [5, 5], eff_str: null, owner: null },
    { id: 'Z', eff: [0, 4], eff_str: null, owner: null },
  ],
  move_log: [],
  provisional: { alice: 0, bob: 0, score: 0 },
  final: null,
};

export const freshHints: HintsView = {
  session_id: SID,
  to_move: 'alice',
  hints: [
    { agent: 'X', value: 3, bounds: null, badges: [] },
    { agent: 'Y', value: 2, bounds: null, badges: [] },
    { agent: 'Z', value: 2, bounds: null, badges: ['dominated'] },
  ],
};

export const whatIfX: WhatIfView = { agent: 'X', score: 3 };

export const afterX: ExchangeView = {
  session: {
    id: SID,
    status: 'awaiting_human',
    human_side: 'alice',
    engine_policy: 'exact',
    tasks: 2,
    to_move: 'alice',
    agents: [
      { id: 'X', eff: [4, 7], eff_str: null, owner: 'alice' },
      { id: 'Y', eff: [5, 5], eff_str: null, owner: 'bob' },
      { id: 'Z', eff: [0, 4], eff_str: null, owner: null },
    ],
    move_log: [
      { agent: 'X', side: 'alice', actor: 'human' },
      { agent: 'Y', side: 'bob', actor: 'engine' },
    ],
    provisional: { alice: 7, bob: 5, score: 2 },
    final: null,
  },
  picks: [
    { agent: 'X', side: 'alice', actor: 'human' },
    { agent: 'Y', side: 'bob', actor: 'engine' },
  ],
};

export const conflict = {
  error: { code: 'conflict', message: "agent 'Y' was already picked" },
};

export const afterZ: ExchangeView = {
  session: {
    id: SID,
    status: 'finished',
    human_side: 'alice',
    engine_policy: 'exact',
    tasks: 2,
    to_move: null,
    agents: [
      { id: 'X', eff: [4, 7], eff_str: null, owner: 'alice' },
      { id: 'Y', eff: [5, 5], eff_str: null, owner: 'bob' },
      { id: 'Z', eff: [0, 4], eff_str: null, owner: 'alice' },
    ],
    move_log: [
      { agent: 'X', side: 'alice', actor: 'human' },
      { agent: 'Y', side: 'bob', actor: 'engine' },
      { agent: 'Z', side: 'alice', actor: 'human' },
    ],
    provisional: { alice: 8, bob: 5, score: 3 },
    final: 3,
  },
  picks: [{ agent: 'Z', side: 'alice', actor: 'human' }],
};

export function clone<T>(value: T): T {
  return JSON.parse(JSON.stringify(value)) as T;
}
