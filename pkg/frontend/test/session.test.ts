import { afterEach, beforeEach, describe, expect, it, vi } from 'vitest';

import { ApiError, type DraftApi } from '../src/api.js';
import { App } from '../src/main.js';
import type { SessionView } from '../src/types.js';
import { afterX, afterZ, clone, conflict, fresh, freshHints, whatIfX } from './fixtures.js';

function flush(times = 3): Promise<void> {
  let p = Promise.resolve();
  for (let i = 0; i < times; i++) p = p.then(() => new Promise((r) => setTimeout(r, 0)));
  return p;
}

interface Stub extends DraftApi {
  calls: string[];
}

/** Replays the recorded service exchanges for the known pool. */
function scriptedApi(overrides: Partial<DraftApi> = {}): Stub {
  const calls: string[] = [];
  const log =
    <A extends unknown[], R>(name: string, fn: (...args: A) => R) =>
    (...args: A): R => {
      calls.push([name, ...args.map(String)].join(' '));
      return fn(...args);
    };
  let session: SessionView = fresh;
  return {
    calls,
    health: log('health', async () => ({ status: 'ok' })),
    createSession: log('createSession', async () => (session = clone(fresh))),
    getSession: log('getSession', async () => session),
    getHints: log('getHints', async () => clone(freshHints)),
    whatIf: log('whatIf', async (_id, agent) => {
      if (agent !== 'X') throw new ApiError(404, 'unknown_agent', agent);
      return clone(whatIfX);
    }),
    submitMove: log('submitMove', async (_id, agent) => {
      if (agent === 'X') {
        session = clone(afterX.session);
        return clone(afterX);
      }
      if (agent === 'Z' && session.move_log.length === 2) {
        session = clone(afterZ.session);
        return clone(afterZ);
      }
      throw new ApiError(409, conflict.error.code, conflict.error.message);
    }),
    ...overrides,
  };
}

let root: HTMLElement;

beforeEach(() => {
  document.body.innerHTML = '<div id="app"></div>';
  root = document.getElementById('app') as HTMLElement;
});

afterEach(() => {
  vi.useRealTimers();
});

function click(selector: string): void {
  const el = root.querySelector<HTMLElement>(selector);
  if (!el) throw new Error(`nothing matches ${selector}`);
  el.dispatchEvent(new MouseEvent('click', { bubbles: true }));
}

describe('a scripted draft on the known pool', () => {
  it('playing the optimal line ends showing the service final score 3', async () => {
    const api = scriptedApi();
    const app = new App(root, api);
    app.mount();

    // landing form, prefilled with the sample pool
    root
      .querySelector('[data-form="start"]')!
      .dispatchEvent(new Event('submit', { bubbles: true, cancelable: true }));
    await flush();
    expect(root.querySelectorAll('tbody tr')).toHaveLength(3);
    expect(root.textContent).toContain('alice to move (you)');

    // hints on: the engine values X at 3 and marks Z dominated
    const toggle = root.querySelector<HTMLInputElement>('[data-action="toggle-hints"]')!;
    toggle.checked = true;
    toggle.dispatchEvent(new Event('change', { bubbles: true }));
    await flush();
    expect(root.querySelector('tr[data-agent="X"] .hint')?.textContent).toContain('3');
    expect(root.querySelector('tr[data-agent="Z"] .badge')?.textContent).toBe('dominated');

    // first human pick: the engine answers with Y in the same exchange
    click('[data-pick="X"]');
    await flush();
    expect(root.querySelector('tr[data-agent="X"]')?.className).toContain('owner-alice');
    expect(root.querySelector('tr[data-agent="Y"]')?.className).toContain('owner-bob');
    expect(root.querySelector('[data-field="score"]')?.textContent).toBe('2');
    const log = [...root.querySelectorAll('.log li')].map((li) => li.textContent);
    expect(log[0]).toContain('alice picked X');
    expect(log[1]).toContain('bob picked Y');

    // second human pick finishes the draft
    click('[data-pick="Z"]');
    await flush();
    const banner = root.querySelector('[data-field="final"]')?.textContent;
    expect(banner).toBe('3');
    expect(banner).toBe(String(afterZ.session.final));
    expect(root.textContent).toContain('draft over');
    expect(root.querySelectorAll('button.pick')).toHaveLength(0);

    // the displayed provisional values are the service's, verbatim
    expect(root.querySelector('[data-field="alice"]')?.textContent).toBe('8');
    expect(root.querySelector('[data-field="bob"]')?.textContent).toBe('5');
  });

  it('hovering a free agent shows the what-if score from the service', async () => {
    const api = scriptedApi();
    const app = new App(root, api);
    app.mount();
    await app.start({ instance: {} });
    await flush();

    root
      .querySelector('tr[data-agent="X"] .eff')!
      .dispatchEvent(new MouseEvent('mouseover', { bubbles: true }));
    await flush();
    expect(root.querySelector('tr[data-agent="X"] .whatif')?.textContent).toContain('3');
    expect(api.calls).toContain(`whatIf ${fresh.id} X`);
  });

  it('a rejected pick shows a toast and refetches the session', async () => {
    const api = scriptedApi({
      submitMove: async () => {
        throw new ApiError(409, conflict.error.code, conflict.error.message);
      },
      getSession: async () => clone(afterX.session),
    });
    const app = new App(root, api);
    app.mount();
    await app.start({ instance: {} });
    await flush();

    click('[data-pick="Y"]');
    await flush();
    expect(root.querySelector('.toast')?.textContent).toContain('already picked');
    // state came back from the service, not from local bookkeeping
    expect(root.querySelector('tr[data-agent="Y"]')?.className).toContain('owner-bob');
  });

  it('a network failure offers a retry that replays the move', async () => {
    let failures = 1;
    const base = scriptedApi();
    const api = scriptedApi({
      submitMove: async (id, agent) => {
        if (failures-- > 0) throw new Error('connection lost');
        return base.submitMove(id, agent);
      },
    });
    const app = new App(root, api);
    app.mount();
    await app.start({ instance: {} });
    await flush();

    click('[data-pick="X"]');
    await flush();
    expect(root.querySelector('.banner.error')?.textContent).toContain('connection lost');

    click('[data-action="retry"]');
    await flush();
    expect(root.querySelector('.banner.error')).toBeNull();
    expect(root.querySelector('tr[data-agent="X"]')?.className).toContain('owner-alice');
  });

  it('polls while the engine is thinking and renders its pick', async () => {
    vi.useFakeTimers();
    const thinking = clone(afterX.session);
    thinking.status = 'engine_thinking';
    thinking.to_move = 'bob';
    thinking.move_log = [afterX.session.move_log[0]];
    thinking.agents = clone(fresh.agents);
    thinking.agents[0].owner = 'alice';

    const views: SessionView[] = [clone(thinking), clone(afterX.session)];
    let polls = 0;
    const api = scriptedApi({
      submitMove: async () => ({ session: clone(thinking), picks: [thinking.move_log[0]] }),
      getSession: async () => {
        polls++;
        return views.shift() ?? clone(afterX.session);
      },
    });
    const app = new App(root, api);
    app.mount();
    await app.start({ instance: {} });
    await vi.runOnlyPendingTimersAsync();

    click('[data-pick="X"]');
    await vi.runOnlyPendingTimersAsync();
    expect(root.textContent).toContain('engine thinking');
    expect(root.querySelectorAll('button.pick[disabled]').length).toBeGreaterThan(0);

    await vi.advanceTimersByTimeAsync(300); // first poll: still thinking
    await vi.advanceTimersByTimeAsync(300); // second poll: engine landed on Y
    expect(root.textContent).toContain('alice to move');
    expect(root.querySelector('tr[data-agent="Y"]')?.className).toContain('owner-bob');
    expect(polls).toBeGreaterThanOrEqual(2);
  });
});
